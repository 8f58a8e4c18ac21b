"""Hopf-pair detection and two-parameter continuation for the 3-D model.

A parameter pair (sigma, tau) is a *Hopf pair* when the Jacobian at an
endemic equilibrium has a pure imaginary eigenvalue pair.  For a 3x3
Jacobian with characteristic cubic ``lambda^3 + c2 lambda^2 + c1 lambda +
c0`` that happens exactly on the Routh-Hurwitz boundary

    c0 - c1*c2 = 0,   c1 > 0,

where the roots are ``+/- i sqrt(c1)`` and ``-c2``; the angular frequency
of the emerging oscillation is ``omega = sqrt(c1)``.  The sign of
``c0 - c1*c2`` is negative on the stable side of the boundary.

Hopf points are solved by damped Newton on the four equations {aware
balance, unwilling balance, infection balance with the i factor removed,
``c0 - c1*c2``} in the unknowns ``(a, u, i, tau)`` with sigma held fixed.
Seeds come from a tau scan that tracks the endemic branch with warm
starts and bisects sign changes of ``c0 - c1*c2``.  Curves are traced by
natural-parameter continuation in sigma (the paper-style curves are
single-valued in sigma), halving the step on failure.

The continuation works on plain parameter vectors rather than validated
parameter objects: traced curves may leave the biologically admissible
region (e.g. cross p + q = 1), which is expected and is precisely what the
coverage check inspects.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .cubic import characteristic_coefficients
from .errors import (
    InvalidInputError,
    NoConvergenceError,
    NotAnEquilibriumError,
    SpuriousRootError,
)
from .integrate import classify_attractor, integrate
from .models import (
    SAUISUAS_PARAM_NAMES,
    SauisuasParams,
    _field3,
    _jacobian3,
    sauisuas_rhs,
)
from .sauisuas import (
    SauisuasEquilibrium,
    _endemic_roots_from_vector,
    _seed_grid,
    classify_stability,
)

_IDX = {name: k for k, name in enumerate(SAUISUAS_PARAM_NAMES)}

FIELD_TOL = 1e-12
BOUNDARY_TOL_FACTOR = 1e-10
MIN_SIGMA_STEP = 1e-5
BRANCH_JUMP = 0.1
CURVE_I_JUMP = 0.05


@dataclass(frozen=True)
class Binding:
    """A parameter locked to an affine function of another, e.g. p = 1 - q."""

    target: str
    constant: float
    sign: float
    source: str

    def apply(self, pv: np.ndarray) -> None:
        pv[_IDX[self.target]] = self.constant + self.sign * pv[_IDX[self.source]]

    def __str__(self) -> str:
        op = "-" if self.sign < 0 else "+"
        return f"{self.target}={self.constant:g}{op}{self.source}"


def parse_binding(text: str | None) -> Binding | None:
    """Parse ``target=constant±source`` (e.g. ``p=1-q``); None passes through."""
    if text is None:
        return None
    m = re.fullmatch(
        r"\s*(\w+)\s*=\s*([-+]?\d*\.?\d+(?:[eE][-+]?\d+)?)\s*([-+])\s*(\w+)\s*",
        text,
    )
    if m is None:
        raise InvalidInputError(
            f"binding {text!r} must have the form target=constant±source, e.g. p=1-q"
        )
    target, constant, op, source = m.groups()
    for name in (target, source):
        if name not in _IDX:
            raise InvalidInputError(f"binding {text!r} references unknown parameter {name!r}")
    if target == source:
        raise InvalidInputError(f"binding {text!r} binds a parameter to itself")
    return Binding(target=target, constant=float(constant),
                   sign=-1.0 if op == "-" else 1.0, source=source)


@dataclass(frozen=True)
class HopfPoint:
    sigma_name: str
    tau_name: str
    sigma: float
    tau: float
    a_star: float
    u_star: float
    i_star: float
    omega: float
    binding: str | None = None

    @property
    def state(self) -> np.ndarray:
        return np.array([self.a_star, self.u_star, self.i_star])


@dataclass(frozen=True)
class HopfCurve:
    sigma_name: str
    tau_name: str
    points: list[HopfPoint]
    truncated: bool = False
    binding: str | None = None

    def __len__(self) -> int:
        return len(self.points)

    def to_csv(self) -> str:
        lines = ["sigma,tau,a,u,i,omega"]
        for pt in self.points:
            lines.append(",".join(
                f"{x:.12g}" for x in
                (pt.sigma, pt.tau, pt.a_star, pt.u_star, pt.i_star, pt.omega)
            ))
        return "\n".join(lines) + "\n"


def _as_vector(params) -> np.ndarray:
    if isinstance(params, SauisuasParams):
        return params.as_vector()
    return np.array(params, dtype=float)


def hopf_residual(params: SauisuasParams, equilibrium) -> tuple[float, float]:
    """(c0 - c1*c2, c1) of the characteristic cubic at a given equilibrium.

    The first entry vanishes on the Hopf boundary and is negative at a
    stable equilibrium; the second must be positive for the boundary to
    carry a genuine imaginary pair.
    """
    if isinstance(equilibrium, SauisuasEquilibrium):
        equilibrium = equilibrium.state
    a, u, i = (float(x) for x in equilibrium)
    pv = _as_vector(params)
    if max(abs(x) for x in _field3(a, u, i, *pv)) > 1e-8:
        raise NotAnEquilibriumError(
            f"({a}, {u}, {i}) is not an equilibrium of the supplied parameters"
        )
    c2, c1, c0 = characteristic_coefficients(np.array(_jacobian3(a, u, i, *pv)))
    return c0 - c1 * c2, c1


def _char_residual(root, pv) -> tuple[float, float]:
    a, u, i = root
    c2, c1, c0 = characteristic_coefficients(np.array(_jacobian3(a, u, i, *pv)))
    return c0 - c1 * c2, c1


def _track_endemic(pv, warm=None):
    """Endemic root for a raw parameter vector.

    Warm Newton from a previous root when available, multistart otherwise.
    Returns an (a, u, i) tuple or None.
    """
    if warm is not None:
        roots = _endemic_roots_from_vector(pv, np.array([warm[0]]), np.array([warm[1]]))
        if roots:
            return roots[0]
    roots = _endemic_roots_from_vector(pv, *_seed_grid(40))
    if not roots:
        return None
    if warm is not None:
        return min(roots, key=lambda r: (r[0] - warm[0]) ** 2 + (r[1] - warm[1]) ** 2)
    return roots[0]


def _hopf_system(x, pv_template, tau_idx, binding):
    a, u, i, tau = x
    pv = pv_template.copy()
    pv[tau_idx] = tau
    if binding is not None:
        binding.apply(pv)
    f1, f2, _ = _field3(a, u, i, *pv)
    s = 1.0 - a - u - i
    balance = pv[0] * s + pv[1] * a + pv[2] * u - pv[3]
    c2, c1, c0 = characteristic_coefficients(np.array(_jacobian3(a, u, i, *pv)))
    return np.array([f1, f2, balance, c0 - c1 * c2]), c1, c1 * c2


def _converged(residual, scale) -> bool:
    return (max(abs(residual[0]), abs(residual[1]), abs(residual[2])) < FIELD_TOL
            and abs(residual[3]) < BOUNDARY_TOL_FACTOR * max(1.0, abs(scale)))


def _solve_from_vector(pv_template, tau_idx, seed, binding,
                       max_iter: int = 50) -> tuple[np.ndarray, float]:
    """Damped Newton on the 4-equation Hopf system; returns (x, c1)."""
    x = np.array(seed, dtype=float)
    residual, c1, scale = _hopf_system(x, pv_template, tau_idx, binding)
    for _ in range(max_iter):
        if _converged(residual, scale):
            return x, c1
        jac = np.empty((4, 4))
        for j in range(4):
            h = 1e-7 * max(1.0, abs(x[j]))
            xj = x.copy()
            xj[j] += h
            fj, _, _ = _hopf_system(xj, pv_template, tau_idx, binding)
            jac[:, j] = (fj - residual) / h
        try:
            step = np.linalg.solve(jac, residual)
        except np.linalg.LinAlgError:
            raise NoConvergenceError("singular Jacobian in the Hopf-point solve")
        norm0 = float(np.linalg.norm(residual))
        damping = 1.0
        for _ in range(12):
            trial = x - damping * step
            trial_res, trial_c1, trial_scale = _hopf_system(
                trial, pv_template, tau_idx, binding)
            if float(np.linalg.norm(trial_res)) < norm0 or _converged(trial_res, trial_scale):
                x, residual, c1, scale = trial, trial_res, trial_c1, trial_scale
                break
            damping *= 0.5
        else:
            raise NoConvergenceError(
                f"Hopf-point Newton stalled at residual {norm0:.3e}"
            )
    if _converged(residual, scale):
        return x, c1
    raise NoConvergenceError(
        f"Hopf-point Newton did not converge (residual {np.max(np.abs(residual)):.3e})"
    )


def solve_hopf_point(params: SauisuasParams, sigma_name: str, sigma: float,
                     tau_name: str, seed, binding: Binding | str | None = None,
                     ) -> HopfPoint:
    """Solve for a Hopf point at fixed sigma from a seed (a, u, i, tau).

    Raises ``NoConvergenceError`` when Newton fails and
    ``SpuriousRootError`` when it converges to a point without a genuine
    imaginary pair (c1 <= 0) or outside the simplex interior.
    """
    binding = parse_binding(binding) if isinstance(binding, str) else binding
    for name in (sigma_name, tau_name):
        if name not in _IDX:
            raise InvalidInputError(f"unknown parameter name {name!r}")
    if sigma_name == tau_name:
        raise InvalidInputError("sigma and tau must be distinct parameters")
    pv_template = _as_vector(params)
    pv_template[_IDX[sigma_name]] = float(sigma)
    x, c1 = _solve_from_vector(pv_template, _IDX[tau_name], seed, binding)
    a, u, i, tau = (float(v) for v in x)
    if c1 <= 1e-12:
        raise SpuriousRootError(
            f"converged with c1 = {c1:.3e} <= 0: no imaginary pair at tau = {tau}"
        )
    if not (a > 0.0 and u > 0.0 and i > 0.0 and a + u + i < 1.0):
        raise SpuriousRootError(
            f"converged to ({a}, {u}, {i}) outside the simplex interior"
        )
    return HopfPoint(
        sigma_name=sigma_name, tau_name=tau_name, sigma=float(sigma), tau=tau,
        a_star=a, u_star=u, i_star=i, omega=math.sqrt(c1),
        binding=str(binding) if binding is not None else None,
    )


def scan_hopf_points(params: SauisuasParams, sigma_name: str, sigma: float,
                     tau_name: str, tau_range, binding: Binding | str | None = None,
                     n_scan: int = 200) -> list[HopfPoint]:
    """All Hopf points along a tau scan at fixed sigma.

    Tracks every endemic branch present at the low end of the range with
    warm-started Newton, re-acquires by multistart after a branch dies,
    and bisects each sign change of ``c0 - c1*c2`` before polishing with
    the full four-dimensional solve.
    """
    binding = parse_binding(binding) if isinstance(binding, str) else binding
    tau_lo, tau_hi = (float(t) for t in tau_range)
    if not tau_hi > tau_lo:
        raise InvalidInputError(f"tau range must be increasing, got ({tau_lo}, {tau_hi})")
    pv0 = _as_vector(params)
    pv0[_IDX[sigma_name]] = float(sigma)
    tau_idx = _IDX[tau_name]

    def vector_at(tau: float) -> np.ndarray:
        pv = pv0.copy()
        pv[tau_idx] = tau
        if binding is not None:
            binding.apply(pv)
        return pv

    taus = np.linspace(tau_lo, tau_hi, n_scan + 1)
    first_roots = _endemic_roots_from_vector(vector_at(taus[0]), *_seed_grid(40))
    branches = [{"root": r, "h": _char_residual(r, vector_at(taus[0]))[0],
                 "tau": taus[0]} for r in first_roots]
    if not branches:
        branches = [{"root": None, "h": None, "tau": taus[0]}]

    brackets: list[tuple[float, float, tuple]] = []
    for tau in taus[1:]:
        pv = vector_at(tau)
        for branch in branches:
            prev_root, prev_h, prev_tau = branch["root"], branch["h"], branch["tau"]
            root = _track_endemic(pv, warm=prev_root)
            if root is None:
                branch.update(root=None, h=None, tau=tau)
                continue
            h = _char_residual(root, pv)[0]
            contiguous = prev_root is not None and max(
                abs(root[k] - prev_root[k]) for k in range(3)) < BRANCH_JUMP
            if contiguous and prev_h is not None and prev_h * h < 0.0:
                brackets.append((prev_tau, tau, prev_root))
            branch.update(root=root, h=h, tau=tau)

    points: list[HopfPoint] = []
    for lo, hi, root_lo in brackets:
        root = root_lo
        h_lo = _char_residual(_track_endemic(vector_at(lo), warm=root) or root,
                              vector_at(lo))[0]
        a, b = lo, hi
        while b - a > max(1e-12, 1e-10 * abs(b)):
            mid = 0.5 * (a + b)
            mid_root = _track_endemic(vector_at(mid), warm=root)
            if mid_root is None:
                break
            root = mid_root
            h_mid = _char_residual(root, vector_at(mid))[0]
            if h_lo * h_mid <= 0.0:
                b = mid
            else:
                a, h_lo = mid, h_mid
        tau_seed = 0.5 * (a + b)
        seed_root = _track_endemic(vector_at(tau_seed), warm=root) or root
        try:
            pt = solve_hopf_point(params, sigma_name, sigma, tau_name,
                                  seed=(*seed_root, tau_seed), binding=binding)
        except (NoConvergenceError, SpuriousRootError):
            continue
        if all(abs(pt.tau - q.tau) > 1e-6 for q in points):
            points.append(pt)
    points.sort(key=lambda p: p.tau)
    return points


def find_hopf_point(params: SauisuasParams, sigma_name: str, sigma: float,
                    tau_name: str, tau_range, binding: Binding | str | None = None,
                    n_scan: int = 200) -> HopfPoint:
    """First Hopf point along the tau scan; error when none exists."""
    points = scan_hopf_points(params, sigma_name, sigma, tau_name, tau_range,
                              binding=binding, n_scan=n_scan)
    if not points:
        raise NoConvergenceError(
            f"no Hopf point for {tau_name} in {tuple(tau_range)} at "
            f"{sigma_name} = {sigma}"
        )
    return points[0]


def trace_hopf_curve(params: SauisuasParams, sigma_name: str, tau_name: str,
                     sigma_range, tau_range,
                     binding: Binding | str | None = None,
                     n_sigma: int = 200, n_scan: int = 200,
                     initial: HopfPoint | None = None) -> HopfCurve:
    """Trace the Hopf curve over a sigma range by natural continuation.

    The initial point comes from tau scans probed across the range (so a
    curve that does not reach the left edge is still found); an empty
    curve is returned when no probe locates a Hopf point.  Failed steps
    halve the continuation step down to 1e-5 before the curve is truncated
    and flagged.
    """
    binding = parse_binding(binding) if isinstance(binding, str) else binding
    sigma_lo, sigma_hi = (float(s) for s in sigma_range)
    if not sigma_hi > sigma_lo:
        raise InvalidInputError(
            f"sigma range must be increasing, got ({sigma_lo}, {sigma_hi})"
        )

    if initial is None:
        for probe in np.linspace(sigma_lo, sigma_hi, 5):
            found = scan_hopf_points(params, sigma_name, float(probe), tau_name,
                                     tau_range, binding=binding, n_scan=n_scan)
            if found:
                initial = found[0]
                break
        else:
            return HopfCurve(sigma_name=sigma_name, tau_name=tau_name, points=[],
                             binding=str(binding) if binding is not None else None)

    base_step = (sigma_hi - sigma_lo) / n_sigma
    truncated = False

    def march(start: HopfPoint, direction: float, bound: float) -> list[HopfPoint]:
        nonlocal truncated
        pts: list[HopfPoint] = []
        prev = start
        step = base_step
        while direction * (bound - prev.sigma) > 1e-12:
            sigma = prev.sigma + direction * step
            if direction * (sigma - bound) > 0.0:
                sigma = bound
            try:
                pt = solve_hopf_point(
                    params, sigma_name, sigma, tau_name,
                    seed=(prev.a_star, prev.u_star, prev.i_star, prev.tau),
                    binding=binding)
                if abs(pt.i_star - prev.i_star) >= CURVE_I_JUMP:
                    raise NoConvergenceError("branch jump during continuation")
            except (NoConvergenceError, SpuriousRootError):
                step *= 0.5
                if step < MIN_SIGMA_STEP:
                    truncated = True
                    break
                continue
            pts.append(pt)
            prev = pt
            step = min(base_step, 2.0 * step)
        return pts

    upward = march(initial, +1.0, sigma_hi)
    downward = march(initial, -1.0, sigma_lo)
    points = list(reversed(downward)) + [initial] + upward
    return HopfCurve(sigma_name=sigma_name, tau_name=tau_name, points=points,
                     truncated=truncated,
                     binding=str(binding) if binding is not None else None)


def prevalence_along_curve(curve: HopfCurve) -> list[tuple[float, float]]:
    """(sigma, i*) pairs along a traced curve."""
    if not curve.points:
        raise InvalidInputError("cannot extract prevalence from an empty curve")
    return [(pt.sigma, pt.i_star) for pt in curve.points]


@dataclass(frozen=True)
class HopfDiagramRow:
    q: float
    i_star: float
    stable: bool
    env_min: float | None
    env_max: float | None


@dataclass(frozen=True)
class HopfDiagram:
    rows: list[HopfDiagramRow]

    def to_csv(self) -> str:
        lines = ["q,i_star,stable,env_min,env_max"]
        for r in self.rows:
            env_min = "" if r.env_min is None else f"{r.env_min:.12g}"
            env_max = "" if r.env_max is None else f"{r.env_max:.12g}"
            lines.append(
                f"{r.q:.12g},{r.i_star:.12g},{str(r.stable).lower()},{env_min},{env_max}"
            )
        return "\n".join(lines) + "\n"


def hopf_diagram(params: SauisuasParams, q_range, steps: int,
                 t_end: float = 2000.0, rel_tol: float = 1e-8,
                 abs_tol: float = 1e-10, tail_fraction: float = 0.25,
                 initial_state=(0.0, 0.0, 0.1)) -> HopfDiagram:
    """Endemic prevalence, stability, and oscillation envelope along q.

    Where the endemic equilibrium is unstable the system is integrated
    from ``initial_state`` and the envelope of the infectious fraction
    over the post-transient tail is recorded; env columns stay empty on
    the stable side.  q values without an endemic equilibrium are skipped.
    """
    from dataclasses import replace

    q_lo, q_hi = (float(x) for x in q_range)
    if not q_hi > q_lo:
        raise InvalidInputError(f"q range must be increasing, got ({q_lo}, {q_hi})")
    rows: list[HopfDiagramRow] = []
    warm = None
    for q in np.linspace(q_lo, q_hi, steps):
        pq = replace(params, q=float(q))
        root = _track_endemic(pq.as_vector(), warm=warm)
        if root is None:
            warm = None
            continue
        warm = root
        _, stable, _ = classify_stability(root, pq)
        env_min = env_max = None
        if not stable:
            traj = integrate(sauisuas_rhs(pq), initial_state, t_end,
                             rel_tol, abs_tol)
            summary = classify_attractor(traj, tail_fraction)
            env_min, env_max = summary.i_min, summary.i_max
        rows.append(HopfDiagramRow(q=float(q), i_star=root[2], stable=stable,
                                   env_min=env_min, env_max=env_max))
    return HopfDiagram(rows=rows)


def curve_covers_simplex(curve: HopfCurve) -> bool:
    """True iff the curve is nonempty and every point with sigma in [0, 1]
    lies strictly above the line tau = 1 - sigma."""
    if not curve.points:
        return False
    on_range = [pt for pt in curve.points if -1e-12 <= pt.sigma <= 1.0 + 1e-12]
    if not on_range:
        return False
    return all(pt.tau > 1.0 - pt.sigma for pt in on_range)


def region_coverage_check(params: SauisuasParams, p_range=(0.0, 1.0),
                          tau_range=(0.0, 3.0), n_sigma: int = 100,
                          n_scan: int = 200) -> bool:
    """Does the oscillatory region under the (p, q) Hopf curve cover the
    whole admissible simplex p, q >= 0, p + q <= 1?

    True iff the traced curve is nonempty and every curve point with p in
    [0, 1] lies strictly above the line q = 1 - p.  An empty curve returns
    False by convention.
    """
    curve = trace_hopf_curve(params, "p", "q", p_range, tau_range,
                             n_sigma=n_sigma, n_scan=n_scan)
    return curve_covers_simplex(curve)
