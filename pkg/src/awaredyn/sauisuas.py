"""Equilibria, stability, and transcritical bifurcations of the 3-D model.

Besides the origin, the model admits a disease-free equilibrium with
nontrivial awareness (closed form, existing iff alpha_a/delta_a > 1) and
interior endemic equilibria.  At an interior equilibrium the infection
balance pins the prevalence:

    i* = 1 - (1 - beta_a/beta) a* - (1 - beta_u/beta) u* - delta/beta

so the endemic search runs Newton on the remaining two equations over
(a, u) from a regular seed grid, which removes the degenerate i = 0 root
family and keeps the iteration well conditioned.  The multistart is fully
vectorized over seeds.

Stability verdicts come from the characteristic cubic of the analytic
Jacobian (closed-form roots, see :mod:`awaredyn.cubic`); an equilibrium is
stable iff all real parts are negative, equivalently the Routh-Hurwitz
inequalities c2 > 0, c0 > 0, c2*c1 > c0 hold.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .cubic import characteristic_coefficients, cubic_roots
from .errors import (
    AbsentEquilibriumError,
    DegenerateEquilibriumError,
    InvalidInputError,
    NotAnEquilibriumError,
    PreconditionError,
)
from .models import (
    SAUISUAS_PARAM_NAMES,
    SauisuasParams,
    _field3,
    _jacobian3,
    sauisuas_field,
    sauisuas_hessian,
)

NEWTON_SEED_GRID = 40
NEWTON_MAX_ITER = 50
NEWTON_TOL = 1e-12
DEDUPE_DISTANCE = 1e-6
RESIDUAL_TOL = 1e-10
MARGINAL_TOL = 1e-9
INTERIOR_MARGIN = 1e-9


@dataclass(frozen=True)
class SauisuasEquilibrium:
    kind: str  # "P1" | "P2" | "Endemic"
    a_star: float
    u_star: float
    i_star: float
    eigenvalues: tuple[complex, complex, complex]
    stable: bool
    marginal: bool = False

    @property
    def state(self) -> np.ndarray:
        return np.array([self.a_star, self.u_star, self.i_star])


def awareness_reproduction_number(params: SauisuasParams) -> float:
    return params.alpha_a / params.delta_a


def _stability(eigs) -> tuple[bool, bool]:
    reals = [z.real for z in eigs]
    marginal = any(abs(r) < MARGINAL_TOL for r in reals)
    stable = all(r < 0.0 for r in reals) and not marginal
    return stable, marginal


def classify_stability(point, params: SauisuasParams):
    """Eigenvalues and stability flag at a genuine equilibrium.

    ``point`` is either a coordinate triple or a ``SauisuasEquilibrium``.
    Returns ``(eigenvalues, stable, marginal)``; raises
    ``NotAnEquilibriumError`` when the field residual at the point exceeds
    1e-8.
    """
    if isinstance(point, SauisuasEquilibrium):
        point = point.state
    a, u, i = (float(x) for x in point)
    residual = float(np.max(np.abs(sauisuas_field((a, u, i), params))))
    if residual > 1e-8:
        raise NotAnEquilibriumError(
            f"field residual {residual:.3e} at ({a}, {u}, {i}) exceeds 1e-8"
        )
    pv = tuple(params.as_vector())
    c2, c1, c0 = characteristic_coefficients(np.array(_jacobian3(a, u, i, *pv)))
    eigs = cubic_roots(c2, c1, c0)
    stable, marginal = _stability(eigs)
    return eigs, stable, marginal


def _make_equilibrium(kind: str, a: float, u: float, i: float,
                      params: SauisuasParams) -> SauisuasEquilibrium:
    eigs, stable, marginal = classify_stability((a, u, i), params)
    return SauisuasEquilibrium(kind=kind, a_star=a, u_star=u, i_star=i,
                               eigenvalues=eigs, stable=stable, marginal=marginal)


def equilibrium_p1(params: SauisuasParams) -> SauisuasEquilibrium:
    """The origin; eigenvalues are alpha_a - delta_a, -delta_u, beta - delta."""
    return _make_equilibrium("P1", 0.0, 0.0, 0.0, params)


def disease_free_coordinates(params: SauisuasParams) -> tuple[float, float]:
    """Closed-form (a, u) of the disease-free equilibrium with awareness.

    On the i = 0 face the aware balance pins s = delta_a/alpha_a and the
    unwilling balance then fixes the a : u split; the coordinates do not
    depend on any transmission parameter nor on p, q.
    """
    r0a = awareness_reproduction_number(params)
    if not r0a > 1.0:
        raise AbsentEquilibriumError(
            f"disease-free equilibrium requires alpha_a/delta_a > 1, got {r0a}"
        )
    shortfall = 1.0 - params.delta_a / params.alpha_a
    growth = params.delta_a * (1.0 + params.alpha_u / params.alpha_a)
    a0 = params.delta_u * shortfall / (growth + params.delta_u)
    u0 = shortfall * growth / (growth + params.delta_u)
    return a0, u0


def equilibrium_p2(params: SauisuasParams) -> SauisuasEquilibrium:
    a0, u0 = disease_free_coordinates(params)
    return _make_equilibrium("P2", a0, u0, 0.0, params)


def lambda3_p2(params: SauisuasParams) -> float:
    """Third (transversal) eigenvalue at the disease-free equilibrium."""
    a0, u0 = disease_free_coordinates(params)
    return (params.beta - (params.beta - params.beta_a) * a0
            - (params.beta - params.beta_u) * u0 - params.delta)


def critical_beta_a(params: SauisuasParams) -> float:
    """Value of beta_a at which the transversal eigenvalue at the
    disease-free equilibrium vanishes (exchange of stability with the
    endemic branch)."""
    a0, u0 = disease_free_coordinates(params)
    if a0 <= 0.0:
        raise DegenerateEquilibriumError(
            f"critical beta_a undefined for a0 = {a0}"
        )
    return params.beta - (params.beta - params.delta
                          - (params.beta - params.beta_u) * u0) / a0


def _reduced_terms(a, u, pv):
    """Prevalence, susceptible fraction, and their constant gradients."""
    beta, beta_a, beta_u, delta = pv[0], pv[1], pv[2], pv[3]
    ka = 1.0 - beta_a / beta
    ku = 1.0 - beta_u / beta
    i = 1.0 - ka * a - ku * u - delta / beta
    s = delta / beta - (beta_a * a + beta_u * u) / beta
    return i, s, -ka, -ku, -beta_a / beta, -beta_u / beta


def _reduced_residual(a, u, pv):
    """The (da/dt, du/dt) equations with i eliminated; vectorized."""
    beta, beta_a, beta_u, delta, delta_a, delta_u, alpha_i, alpha_a, alpha_u, p, q = pv
    i, s, _, _, _, _ = _reduced_terms(a, u, pv)
    r1 = alpha_i * s * i + alpha_a * s * a + p * delta * i - beta_a * a * i - delta_a * a
    r2 = delta_a * a + alpha_u * s * a + q * delta * i - beta_u * u * i - delta_u * u
    return r1, r2


def _reduced_jacobian(a, u, pv):
    beta, beta_a, beta_u, delta, delta_a, delta_u, alpha_i, alpha_a, alpha_u, p, q = pv
    i, s, dia, diu, dsa, dsu = _reduced_terms(a, u, pv)
    j11 = (alpha_i * (dsa * i + s * dia) + alpha_a * (dsa * a + s)
           + p * delta * dia - beta_a * (i + a * dia) - delta_a)
    j12 = (alpha_i * (dsu * i + s * diu) + alpha_a * dsu * a
           + p * delta * diu - beta_a * a * diu)
    j21 = (delta_a + alpha_u * (dsa * a + s)
           + q * delta * dia - beta_u * u * dia)
    j22 = (alpha_u * dsu * a + q * delta * diu
           - beta_u * (i + u * diu) - delta_u)
    return j11, j12, j21, j22


def _endemic_roots_from_vector(pv, seeds_a, seeds_u) -> list[tuple[float, float, float]]:
    """Vectorized Newton multistart on the reduced system.

    Returns deduplicated interior roots (a, u, i) with full-field residual
    below 1e-10, sorted by prevalence.
    """
    pv = np.asarray(pv, dtype=float)
    a = np.array(seeds_a, dtype=float)
    u = np.array(seeds_u, dtype=float)
    alive = np.ones(a.shape, dtype=bool)
    converged = np.zeros(a.shape, dtype=bool)

    with np.errstate(all="ignore"):
        for _ in range(NEWTON_MAX_ITER):
            r1, r2 = _reduced_residual(a, u, pv)
            res = np.maximum(np.abs(r1), np.abs(r2))
            newly = alive & (res < NEWTON_TOL)
            converged |= newly
            alive &= ~newly
            if not np.any(alive):
                break
            j11, j12, j21, j22 = _reduced_jacobian(a, u, pv)
            det = j11 * j22 - j12 * j21
            ok = alive & (np.abs(det) > 1e-300)
            step_a = np.where(ok, (r1 * j22 - r2 * j12) / np.where(ok, det, 1.0), 0.0)
            step_u = np.where(ok, (j11 * r2 - j21 * r1) / np.where(ok, det, 1.0), 0.0)
            a = a - step_a
            u = u - step_u
            wandered = (np.abs(a) > 3.0) | (np.abs(u) > 3.0) | ~np.isfinite(a) | ~np.isfinite(u)
            alive &= ok & ~wandered

    roots: list[tuple[float, float, float]] = []
    for ca, cu in zip(a[converged], u[converged]):
        i, s, _, _, _, _ = _reduced_terms(ca, cu, pv)
        if not (ca > INTERIOR_MARGIN and cu > INTERIOR_MARGIN and i > INTERIOR_MARGIN
                and ca + cu + i < 1.0 - INTERIOR_MARGIN):
            continue
        if max(abs(x) for x in _field3(ca, cu, i, *pv)) > RESIDUAL_TOL:
            continue
        if any((ca - ra) ** 2 + (cu - ru) ** 2 < DEDUPE_DISTANCE ** 2
               for ra, ru, _ in roots):
            continue
        roots.append((float(ca), float(cu), float(i)))
    roots.sort(key=lambda r: r[2])
    return roots


def _seed_grid(n: int) -> tuple[np.ndarray, np.ndarray]:
    side = np.linspace(0.0, 1.0, n + 2)[1:-1]
    ga, gu = np.meshgrid(side, side)
    keep = ga + gu < 1.0
    return ga[keep], gu[keep]


def find_endemic_equilibria(params: SauisuasParams,
                            grid: int = NEWTON_SEED_GRID) -> list[SauisuasEquilibrium]:
    """All interior equilibria found by the Newton multistart.

    An empty list is a valid outcome (no endemic state).  Every returned
    point satisfies the infection balance beta*s + beta_a*a + beta_u*u =
    delta to rounding level by construction.
    """
    seeds_a, seeds_u = _seed_grid(grid)
    roots = _endemic_roots_from_vector(params.as_vector(), seeds_a, seeds_u)
    return [_make_equilibrium("Endemic", a, u, i, params) for a, u, i in roots]


@dataclass(frozen=True)
class SotomayorReport:
    """Scalar transcriticality certificates at the epidemic threshold.

    ``left_vec_dot_f_mu`` must vanish, ``left_dot_Dfmu_v`` be positive, and
    ``left_dot_D2f_vv`` negative; this sign pattern certifies a forward
    transcritical bifurcation of the endemic branch from the origin as the
    transmission rate crosses the recovery rate.
    """

    left_vec_dot_f_mu: float
    left_dot_Dfmu_v: float
    left_dot_D2f_vv: float
    v: np.ndarray


def sotomayor_at_r0_equal_1(params: SauisuasParams) -> SotomayorReport:
    """Evaluate the three transcriticality quantities at beta = delta.

    Requires alpha_a < delta_a (no awareness outbreak) so that the vanishing
    eigenvalue at the origin is simple.  The left null vector is (0, 0, 1);
    the right null vector is computed in closed form and checked to satisfy
    the balance equations.
    """
    if params.alpha_a >= params.delta_a:
        raise PreconditionError(
            f"requires alpha_a < delta_a, got alpha_a={params.alpha_a}, "
            f"delta_a={params.delta_a}"
        )
    if abs(params.beta - params.delta) > 1e-12 * max(1.0, params.delta):
        raise PreconditionError(
            f"requires beta = delta, got beta={params.beta}, delta={params.delta}"
        )

    gap = params.delta_a - params.alpha_a
    inflow = params.alpha_i + params.p * params.delta
    v3 = gap / inflow
    v2 = (params.delta_a + params.alpha_u + params.q * params.delta * v3) / params.delta_u
    v = np.array([1.0, v2, v3])

    # d(field)/d(beta) = (0, 0, s*i), which vanishes at the origin (i = 0).
    first = 0.0

    # Jacobian of (0, 0, s*i) in the state is rows of zeros except
    # (-i, -i, s - i) in the last row; at the origin that row is (0, 0, 1).
    second = v3

    hessian_i = sauisuas_hessian(params)[2]
    third = float(v @ hessian_i @ v)

    return SotomayorReport(
        left_vec_dot_f_mu=float(first),
        left_dot_Dfmu_v=float(second),
        left_dot_D2f_vv=third,
        v=v,
    )


@dataclass(frozen=True)
class BranchDiagram:
    """Equilibria with stability along a one-parameter sweep."""

    parameter: str
    values: np.ndarray
    branches: list[list[SauisuasEquilibrium]]  # one list per sweep value
    transcritical_values: list[float]
    fold_values: list[float]


def _with_value(params: SauisuasParams, name: str, value: float) -> SauisuasParams:
    return replace(params, **{name: float(value)})


def _endemic_count(params: SauisuasParams) -> int:
    return len(find_endemic_equilibria(params))


def branch_diagram(params: SauisuasParams, sweep: str, sweep_range, steps: int,
                   refine_tol: float = 1e-9) -> BranchDiagram:
    """Sweep one parameter and collect every equilibrium with stability.

    Transcritical points are located as sign changes of the transversal
    eigenvalue at the disease-free equilibrium (bisected to ``refine_tol``);
    folds as changes by two in the number of interior roots between
    adjacent sweep values (bisected on the root count, so merging branches
    are resolved well below the sweep spacing).
    """
    if sweep not in SAUISUAS_PARAM_NAMES:
        raise InvalidInputError(
            f"unknown sweep parameter {sweep!r}; expected one of {SAUISUAS_PARAM_NAMES}"
        )
    lo, hi = (float(x) for x in sweep_range)
    if not hi > lo:
        raise InvalidInputError(f"sweep range must be increasing, got ({lo}, {hi})")
    if steps < 2:
        raise InvalidInputError(f"steps must be >= 2, got {steps}")

    values = np.linspace(lo, hi, steps)
    branches: list[list[SauisuasEquilibrium]] = []
    lam3: list[float | None] = []
    counts: list[int] = []
    for v in values:
        pv = _with_value(params, sweep, v)
        entry = [equilibrium_p1(pv)]
        if awareness_reproduction_number(pv) > 1.0:
            entry.append(equilibrium_p2(pv))
            lam3.append(lambda3_p2(pv))
        else:
            lam3.append(None)
        endemic = find_endemic_equilibria(pv)
        entry.extend(endemic)
        counts.append(len(endemic))
        branches.append(entry)

    transcritical: list[float] = []
    for k in range(steps - 1):
        l0, l1 = lam3[k], lam3[k + 1]
        if l0 is None or l1 is None or l0 * l1 > 0.0:
            continue
        lo_v, hi_v, lo_l = values[k], values[k + 1], l0
        while hi_v - lo_v > refine_tol:
            mid = 0.5 * (lo_v + hi_v)
            lm = lambda3_p2(_with_value(params, sweep, mid))
            if lo_l * lm <= 0.0:
                hi_v = mid
            else:
                lo_v, lo_l = mid, lm
        transcritical.append(0.5 * (lo_v + hi_v))

    folds: list[float] = []
    for k in range(steps - 1):
        c0, c1 = counts[k], counts[k + 1]
        if abs(c1 - c0) < 2:
            continue
        # bisect the existence boundary of the pair of merging roots
        many = max(c0, c1)
        lo_v, hi_v = values[k], values[k + 1]
        lo_many = c0 == many
        while hi_v - lo_v > 1e-6:
            mid = 0.5 * (lo_v + hi_v)
            cm = _endemic_count(_with_value(params, sweep, mid))
            if (cm >= many) == lo_many:
                lo_v = mid
            else:
                hi_v = mid
        folds.append(0.5 * (lo_v + hi_v))

    return BranchDiagram(parameter=sweep, values=values, branches=branches,
                         transcritical_values=transcritical, fold_values=folds)
