"""Characteristic polynomials and closed-form root finding for small matrices.

The stability machinery never needs a general eigensolver: the 3-D model's
Jacobian yields a cubic ``lambda^3 + c2 lambda^2 + c1 lambda + c0`` whose
roots are computed in closed form, and the 2-D model's a quadratic.

The cubic solver branches on the discriminant of the depressed cubic
``t^3 + p t + q`` (with ``lambda = t - c2/3``):

* three real roots: trigonometric form ``t_k = m cos(phi - 2 pi k / 3)``
  with ``m = 2 sqrt(-p/3)``, which is well conditioned where Cardano's
  formula would take cube roots of complex numbers;
* one real root: Cardano with the larger-magnitude cube root chosen first
  and its partner recovered from ``A * B = -p/3``, avoiding cancellation;
  the complex pair follows algebraically from (A, B).

Every root is finished with two Newton steps on the original cubic, which
pushes the residual down to rounding level without changing the branch
logic.
"""

from __future__ import annotations

import math

import numpy as np


def characteristic_coefficients(m) -> tuple[float, float, float]:
    """Coefficients (c2, c1, c0) of det(lambda I - M) for a 3x3 matrix."""
    m = np.asarray(m, dtype=float)
    trace = m[0, 0] + m[1, 1] + m[2, 2]
    minors = (
        m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1]
        + m[0, 0] * m[2, 2] - m[0, 2] * m[2, 0]
        + m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    )
    det = (
        m[0, 0] * (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
        - m[0, 1] * (m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
        + m[0, 2] * (m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0])
    )
    return -trace, minors, -det


def _polish(root: complex, c2: float, c1: float, c0: float) -> complex:
    for _ in range(2):
        f = ((root + c2) * root + c1) * root + c0
        fp = (3.0 * root + 2.0 * c2) * root + c1
        if fp == 0:
            break
        step = f / fp
        if not (math.isfinite(step.real) and math.isfinite(step.imag)):
            break
        root = root - step
    return root


def cubic_roots(c2: float, c1: float, c0: float) -> tuple[complex, complex, complex]:
    """All roots of lambda^3 + c2 lambda^2 + c1 lambda + c0.

    Real roots are returned with zero imaginary part; a complex pair is
    returned conjugate.  Ordering is deterministic (ascending real part,
    then imaginary part).
    """
    shift = c2 / 3.0
    p = c1 - c2 * c2 / 3.0
    q = 2.0 * c2 ** 3 / 27.0 - c2 * c1 / 3.0 + c0
    disc = (q / 2.0) ** 2 + (p / 3.0) ** 3

    if disc > 0.0:
        sq = math.sqrt(disc)
        u1 = -q / 2.0 + sq
        u2 = -q / 2.0 - sq
        big = u1 if abs(u1) >= abs(u2) else u2
        a = math.copysign(abs(big) ** (1.0 / 3.0), big)
        b = 0.0 if a == 0.0 else -p / (3.0 * a)
        t_real = a + b
        re = -t_real / 2.0
        im = math.sqrt(3.0) / 2.0 * abs(a - b)
        roots = [
            complex(t_real - shift, 0.0),
            complex(re - shift, im),
            complex(re - shift, -im),
        ]
    elif disc < 0.0:
        # p < 0 is implied here
        m = 2.0 * math.sqrt(-p / 3.0)
        arg = 3.0 * q / (p * m)
        arg = min(1.0, max(-1.0, arg))
        phi = math.acos(arg) / 3.0
        roots = [
            complex(m * math.cos(phi - 2.0 * math.pi * k / 3.0) - shift, 0.0)
            for k in range(3)
        ]
    else:
        if p == 0.0:
            roots = [complex(-shift, 0.0)] * 3
        else:
            single = 3.0 * q / p
            double = -single / 2.0
            roots = [
                complex(single - shift, 0.0),
                complex(double - shift, 0.0),
                complex(double - shift, 0.0),
            ]

    roots = [_polish(r, c2, c1, c0) for r in roots]
    roots.sort(key=lambda z: (z.real, z.imag))
    return roots[0], roots[1], roots[2]


def matrix_eigenvalues_3x3(m) -> tuple[complex, complex, complex]:
    """Eigenvalues of a 3x3 matrix via its characteristic cubic."""
    c2, c1, c0 = characteristic_coefficients(m)
    return cubic_roots(c2, c1, c0)


def routh_hurwitz_stable(c2: float, c1: float, c0: float) -> bool:
    """All roots of the cubic in the open left half plane?"""
    return c2 > 0.0 and c0 > 0.0 and c2 * c1 > c0


def quadratic_eigenvalues(m) -> tuple[complex, complex]:
    """Eigenvalues of a 2x2 matrix from trace and determinant."""
    m = np.asarray(m, dtype=float)
    tr = m[0, 0] + m[1, 1]
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    disc = tr * tr - 4.0 * det
    if disc >= 0.0:
        sq = math.sqrt(disc)
        lo, hi = (tr - sq) / 2.0, (tr + sq) / 2.0
        return complex(lo, 0.0), complex(hi, 0.0)
    sq = math.sqrt(-disc)
    return complex(tr / 2.0, -sq / 2.0), complex(tr / 2.0, sq / 2.0)
