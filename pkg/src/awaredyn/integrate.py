"""Adaptive integration and attractor classification for model trajectories.

Integration uses an embedded Runge-Kutta 4(5) pair with proportional-
integral step control (scipy's RK45); the fields are smooth and non-stiff
in the regimes explored here.  Trajectories are sampled on a dense uniform
grid so that the oscillation-envelope extraction downstream has enough
resolution.

Attractor classification inspects the envelope of the infectious fraction
over the final portion of a run:

* envelope width < 1e-4            -> equilibrium
* envelope width >= 1e-3           -> limit cycle, unless the amplitude is
                                      still shrinking by more than 5% from
                                      the first to the second half of the
                                      tail (a slowly decaying spiral), in
                                      which case the verdict is undecided
* anything in between              -> undecided

The factor-10 gap between the two thresholds avoids flapping between the
definite verdicts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .errors import (
    InsufficientDataError,
    InvalidInputError,
    InvarianceBreachError,
    StiffnessError,
)
from .models import in_omega

DEFAULT_T_END = 2000.0
DEFAULT_REL_TOL = 1e-8
DEFAULT_ABS_TOL = 1e-10
DEFAULT_SAMPLES = 4001
SIMPLEX_TOL = 1e-9

EQUILIBRIUM_AMPLITUDE = 1e-4
CYCLE_AMPLITUDE = 1e-3
DECAY_FRACTION = 0.05


@dataclass(frozen=True)
class Trajectory:
    """A sampled solution: strictly increasing times, states row per time."""

    times: np.ndarray
    states: np.ndarray

    @property
    def dim(self) -> int:
        return self.states.shape[1]

    @property
    def infectious(self) -> np.ndarray:
        """The i component (last state column in both models)."""
        return self.states[:, -1]

    def csv_header(self) -> str:
        return "t,a,i,s" if self.dim == 2 else "t,a,u,i,s"

    def to_csv(self) -> str:
        """Serialize as CSV with the derived s column, 12 significant digits."""
        lines = [self.csv_header()]
        for t, row in zip(self.times, self.states):
            s = 1.0 - float(np.sum(row))
            cells = [f"{t:.12g}"] + [f"{x:.12g}" for x in row] + [f"{s:.12g}"]
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class AttractorSummary:
    """Verdict on the long-run behavior of a trajectory."""

    kind: str  # "Equilibrium" | "LimitCycle" | "Undecided"
    terminal_state: np.ndarray
    i_min: float
    i_max: float

    @property
    def amplitude(self) -> float:
        return self.i_max - self.i_min


def integrate(rhs, initial, t_end: float,
              rel_tol: float = DEFAULT_REL_TOL,
              abs_tol: float = DEFAULT_ABS_TOL,
              n_samples: int = DEFAULT_SAMPLES) -> Trajectory:
    """Integrate ``dy/dt = rhs(t, y)`` from a point of the feasible simplex.

    Raises ``StiffnessError`` when the step size underflows and
    ``InvarianceBreachError`` when any sample leaves the simplex by more
    than 1e-9 (which would indicate a bug in the field or the tolerances,
    not a property of the models).  Violations below that tolerance are
    clipped.
    """
    initial = np.asarray(initial, dtype=float)
    if initial.ndim != 1 or initial.size not in (2, 3):
        raise InvalidInputError(f"initial state must have 2 or 3 entries, got {initial!r}")
    if not np.all(np.isfinite(initial)) or not in_omega(initial, tol=SIMPLEX_TOL):
        raise InvalidInputError(
            f"initial state {initial.tolist()} is outside the feasible simplex"
        )
    if not (math.isfinite(t_end) and t_end > 0.0):
        raise InvalidInputError(f"t_end must be positive, got {t_end}")
    for name, tol in (("rel_tol", rel_tol), ("abs_tol", abs_tol)):
        if not 0.0 < tol <= 1e-2:
            raise InvalidInputError(f"{name} must lie in (0, 1e-2], got {tol}")
    if n_samples < 2:
        raise InvalidInputError(f"n_samples must be >= 2, got {n_samples}")

    t_eval = np.linspace(0.0, t_end, n_samples)
    sol = solve_ivp(rhs, (0.0, t_end), initial, method="RK45",
                    rtol=rel_tol, atol=abs_tol, t_eval=t_eval)
    if not sol.success:
        raise StiffnessError(f"integrator failed: {sol.message}")

    states = sol.y.T.copy()
    low = np.min(states)
    high = np.max(np.sum(states, axis=1))
    if low < -SIMPLEX_TOL or high > 1.0 + SIMPLEX_TOL:
        raise InvarianceBreachError(
            f"trajectory left the simplex (min coord {low:.3e}, max sum {high:.3e})"
        )
    np.clip(states, 0.0, 1.0, out=states)
    states[0] = initial
    return Trajectory(times=sol.t.copy(), states=states)


def classify_attractor(traj: Trajectory, tail_fraction: float = 0.25,
                       equilibrium_amplitude: float = EQUILIBRIUM_AMPLITUDE,
                       cycle_amplitude: float = CYCLE_AMPLITUDE) -> AttractorSummary:
    """Classify the tail of a trajectory per the envelope of ``i``."""
    if not 0.0 < tail_fraction <= 1.0:
        raise InvalidInputError(f"tail_fraction must lie in (0, 1], got {tail_fraction}")
    times = traj.times
    t_cut = times[-1] - tail_fraction * (times[-1] - times[0])
    tail = times >= t_cut
    if int(np.count_nonzero(tail)) < 100:
        raise InsufficientDataError(
            f"tail window holds {int(np.count_nonzero(tail))} samples; need >= 100"
        )
    i_tail = traj.infectious[tail]
    i_min = float(np.min(i_tail))
    i_max = float(np.max(i_tail))
    amplitude = i_max - i_min

    if amplitude < equilibrium_amplitude:
        kind = "Equilibrium"
    elif amplitude >= cycle_amplitude:
        kind = "LimitCycle"
        half = i_tail.size // 2
        first = float(np.max(i_tail[:half]) - np.min(i_tail[:half]))
        second = float(np.max(i_tail[half:]) - np.min(i_tail[half:]))
        if second < (1.0 - DECAY_FRACTION) * first:
            kind = "Undecided"  # amplitude still decaying
    else:
        kind = "Undecided"

    return AttractorSummary(kind=kind, terminal_state=traj.states[-1].copy(),
                            i_min=i_min, i_max=i_max)
