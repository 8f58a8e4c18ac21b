"""Equilibria, stability, and phase-portrait data for the 2-D model.

The model has up to three equilibrium types: the origin (disease-free and
awareness-free), a disease-free point on the a-axis that exists when the
awareness reproduction number exceeds one, and interior (endemic) points
found where the awareness nullcline crosses the sloped branch of the
infection nullcline.  Both boundary equilibria have closed-form
eigenvalues because the Jacobian is triangular at i = 0.

No closed orbit exists in the simplex interior: after division by a*i the
field has strictly negative divergence, which `dulac_divergence` exposes
for numerical spot checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .cubic import quadratic_eigenvalues
from .errors import AbsentEquilibriumError, DomainError, InvalidInputError
from .integrate import Trajectory, integrate
from .models import SaiasParams, in_omega, saias_field, saias_jacobian, saias_rhs

ENDEMIC_SCAN_POINTS = 2000
BISECT_TOL = 1e-12
RESIDUAL_TOL = 1e-10
MARGINAL_TOL = 1e-9


@dataclass(frozen=True)
class SaiasEquilibrium:
    kind: str  # "P1" | "P2" | "Endemic"
    a_star: float
    i_star: float
    eigenvalues: tuple[complex, complex]
    stable: bool
    marginal: bool = False

    @property
    def state(self) -> np.ndarray:
        return np.array([self.a_star, self.i_star])


@dataclass(frozen=True)
class ReproductionNumbers:
    r0: float
    r0a: float


def reproduction_numbers(params: SaiasParams) -> ReproductionNumbers:
    """Basic reproduction numbers of disease (beta/delta) and awareness."""
    return ReproductionNumbers(
        r0=params.beta / params.delta,
        r0a=params.alpha_a(0.0) / params.delta_a(0.0),
    )


class INullclineLine(NamedTuple):
    intercept: float
    slope: float
    a_axis_crossing: float


def i_nullcline_line(params: SaiasParams) -> INullclineLine:
    """The sloped branch of the i-nullcline as i(a) = intercept + slope * a.

    The other branch is the a-axis (i = 0).  The sloped branch crosses the
    a-axis at (beta - delta) / (beta - beta_a).
    """
    intercept = 1.0 - params.delta / params.beta
    slope = -(1.0 - params.beta_a / params.beta)
    crossing = (params.beta - params.delta) / (params.beta - params.beta_a)
    return INullclineLine(intercept, slope, crossing)


def a_nullcline(params: SaiasParams, i):
    """The positive branch a(i) of the awareness nullcline.

    Setting da/dt = 0 and dividing by -alpha_a(i) gives a quadratic in a;
    this returns its nonnegative root.  Accepts scalars or arrays.
    """
    i = np.asarray(i, dtype=float)
    scalar = i.ndim == 0
    iv = np.atleast_1d(i)
    alpha_i = np.array([params.alpha_i(x) for x in iv])
    alpha_a = np.array([params.alpha_a(x) for x in iv])
    delta_a = np.array([params.delta_a(x) for x in iv])
    p = np.array([params.p(x) for x in iv])

    b = 1.0 - iv - ((alpha_i + params.beta_a) * iv + delta_a) / alpha_a
    c = alpha_i / alpha_a * iv * (1.0 - iv) + p * params.delta / alpha_a * iv
    root = 0.5 * (b + np.sqrt(b * b + 4.0 * c))
    return float(root[0]) if scalar else root


def eigenvalues_p1(params: SaiasParams) -> tuple[float, float]:
    """Closed-form eigenvalues at the origin."""
    return (
        params.alpha_a(0.0) - params.delta_a(0.0),
        params.beta - params.delta,
    )


def eigenvalues_p2(params: SaiasParams) -> tuple[float, float]:
    """Closed-form eigenvalues at the disease-free point on the a-axis."""
    rn = reproduction_numbers(params)
    if not rn.r0a > 1.0:
        raise AbsentEquilibriumError(
            f"the disease-free equilibrium requires an awareness reproduction "
            f"number > 1, got {rn.r0a}"
        )
    a2 = 1.0 - params.delta_a(0.0) / params.alpha_a(0.0)
    return (
        params.delta_a(0.0) - params.alpha_a(0.0),
        params.beta - params.delta - (params.beta - params.beta_a) * a2,
    )


def dulac_divergence(state, params: SaiasParams) -> float:
    """Divergence of the field rescaled by 1/(a*i), strictly interior only.

    Negative everywhere inside the simplex, which rules out closed orbits.
    """
    a, i = float(state[0]), float(state[1])
    if not (a > 0.0 and i > 0.0 and a + i < 1.0):
        raise DomainError(
            f"divergence check requires a point strictly inside the simplex, "
            f"got (a={a}, i={i})"
        )
    return (
        -params.alpha_i(i) * (1.0 - i) / a ** 2
        - params.alpha_a(i) / i
        - params.p(i) * params.delta / a ** 2
        - params.beta / a
    )


def _stability(eigs: tuple[complex, complex]) -> tuple[bool, bool]:
    reals = [z.real for z in eigs]
    marginal = any(abs(r) < MARGINAL_TOL for r in reals)
    stable = all(r < 0.0 for r in reals) and not marginal
    return stable, marginal


def _equilibrium(kind: str, a: float, i: float,
                 eigs: tuple[complex, complex]) -> SaiasEquilibrium:
    stable, marginal = _stability(eigs)
    return SaiasEquilibrium(kind=kind, a_star=a, i_star=i, eigenvalues=eigs,
                            stable=stable, marginal=marginal)


def _newton_polish(a: float, i: float, params: SaiasParams,
                   steps: int = 6) -> tuple[float, float]:
    for _ in range(steps):
        f = saias_field((a, i), params)
        if max(abs(f[0]), abs(f[1])) < 1e-14:
            break
        j = saias_jacobian((a, i), params)
        det = j[0, 0] * j[1, 1] - j[0, 1] * j[1, 0]
        if det == 0.0:
            break
        a -= (f[0] * j[1, 1] - f[1] * j[0, 1]) / det
        i -= (j[0, 0] * f[1] - j[1, 0] * f[0]) / det
    return a, i


def find_equilibria(params: SaiasParams) -> list[SaiasEquilibrium]:
    """All equilibria in the simplex: origin, a-axis point, interior roots.

    The a-axis point is reported only for awareness reproduction number
    strictly above one (at exactly one it coincides with the origin).
    Interior roots come from a 2000-point scan of the difference between
    the awareness nullcline a(i) and the sloped infection-nullcline branch,
    refined by bisection and a Newton polish.
    """
    out = [_equilibrium("P1", 0.0, 0.0, tuple(complex(x) for x in eigenvalues_p1(params)))]

    rn = reproduction_numbers(params)
    if rn.r0a > 1.0:
        a2 = 1.0 - params.delta_a(0.0) / params.alpha_a(0.0)
        out.append(_equilibrium(
            "P2", a2, 0.0, tuple(complex(x) for x in eigenvalues_p2(params))))

    # a-coordinate of the sloped i-nullcline branch as a function of i
    def line_a(i):
        return (params.beta - params.delta - params.beta * i) / (params.beta - params.beta_a)

    grid = np.linspace(0.0, 1.0, ENDEMIC_SCAN_POINTS + 1)[1:-1]
    gap = a_nullcline(params, grid) - line_a(grid)

    roots: list[float] = []
    for k in range(len(grid) - 1):
        g0, g1 = gap[k], gap[k + 1]
        if g0 == 0.0:
            roots.append(grid[k])
            continue
        if g0 * g1 < 0.0:
            lo, hi, glo = grid[k], grid[k + 1], g0
            while hi - lo > BISECT_TOL:
                mid = 0.5 * (lo + hi)
                gm = float(a_nullcline(params, mid)) - line_a(mid)
                if gm == 0.0:
                    lo = hi = mid
                    break
                if glo * gm < 0.0:
                    hi = mid
                else:
                    lo, glo = mid, gm
            roots.append(0.5 * (lo + hi))

    for i_root in roots:
        a_root = float(a_nullcline(params, i_root))
        a_root, i_root = _newton_polish(a_root, i_root, params)
        inside = a_root > 0.0 and i_root > 0.0 and a_root + i_root < 1.0
        residual = float(np.max(np.abs(saias_field((a_root, i_root), params))))
        if not inside or residual > RESIDUAL_TOL:
            continue
        eigs = quadratic_eigenvalues(saias_jacobian((a_root, i_root), params))
        out.append(_equilibrium("Endemic", a_root, i_root, eigs))
    return out


@dataclass(frozen=True)
class PhasePortraitData:
    """CSV-ready bundle backing a phase-portrait figure."""

    field_grid: np.ndarray  # columns a, i, da/dt, di/dt
    nullclines: dict[str, np.ndarray]  # name -> polyline columns a, i
    equilibria: list[SaiasEquilibrium]
    trajectories: list[Trajectory]


def phase_portrait_data(params: SaiasParams, grid_n: int = 20,
                        seed_trajectories=(), t_end: float = 50.0,
                        rel_tol: float = 1e-8, abs_tol: float = 1e-10) -> PhasePortraitData:
    """Field samples, nullcline polylines, equilibria, and sample runs."""
    if grid_n < 10:
        raise InvalidInputError(f"grid_n must be >= 10, got {grid_n}")

    samples = []
    for a in np.linspace(0.0, 1.0, grid_n):
        for i in np.linspace(0.0, 1.0, grid_n):
            if a + i <= 1.0 + 1e-12:
                da, di = saias_field((a, i), params)
                samples.append((a, i, da, di))
    field_grid = np.array(samples)

    i_dense = np.linspace(0.0, 1.0, 401)
    a_null = np.column_stack([a_nullcline(params, i_dense), i_dense])
    line = i_nullcline_line(params)
    a_line = np.linspace(0.0, 1.0, 401)
    i_line = line.intercept + line.slope * a_line
    keep = (i_line >= 0.0) & (i_line <= 1.0) & (a_line + i_line <= 1.0 + 1e-12)
    nullclines = {
        "a_nullcline": a_null,
        "i_nullcline_line": np.column_stack([a_line[keep], i_line[keep]]),
        "i_nullcline_axis": np.column_stack([np.linspace(0.0, 1.0, 2), np.zeros(2)]),
    }

    trajectories = []
    rhs = saias_rhs(params)
    for seed in seed_trajectories:
        seed = np.asarray(seed, dtype=float)
        if not in_omega(seed):
            raise InvalidInputError(f"trajectory seed {seed.tolist()} is outside the simplex")
        trajectories.append(integrate(rhs, seed, t_end, rel_tol, abs_tol))

    return PhasePortraitData(
        field_grid=field_grid,
        nullclines=nullclines,
        equilibria=find_equilibria(params),
        trajectories=trajectories,
    )
