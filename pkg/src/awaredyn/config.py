"""Scenario configuration: flat key = value text with one optional [task] block.

Every scenario in scope is a flat parameter list, so the format is kept
flat on purpose: ``key = value`` lines with ``#`` comments, model
parameters and optional solver overrides at the top level, and
subcommand-specific settings (sweep ranges, Hopf pair, bindings, initial
conditions) in an optional ``[task]`` section.  Model parameters carry no
defaults; an empty file is an error, not a default scenario.

Example::

    model = sauisuas
    beta = 3       # transmission rate
    beta_a = 0.2
    beta_u = 0.5
    delta = 1
    delta_a = 0.01
    delta_u = 0.05
    alpha_i = 0.05
    alpha_a = 0.012
    alpha_u = 1
    p = 0.05
    q = 0.05

    [task]
    sigma = p
    tau = q
    sigma_min = 0.04
    sigma_max = 0.48

For the 2-D model the prevalence-dependent coefficients take
``family:coefficient`` specs, e.g. ``alpha_a = linear:4``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ConfigError, InvalidInputError
from .models import SAUISUAS_PARAM_NAMES, SaiasParams, SauisuasParams
from .rates import RateFunction

SAIAS_FLOAT_KEYS = ("beta", "beta_a", "delta")
SAIAS_RATE_KEYS = ("alpha_i", "alpha_a", "delta_a", "p")
SOLVER_KEYS = ("t_end", "rel_tol", "abs_tol")

DEFAULT_T_END = 2000.0
DEFAULT_REL_TOL = 1e-8
DEFAULT_ABS_TOL = 1e-10


@dataclass(frozen=True)
class ScenarioConfig:
    model: str
    params: SaiasParams | SauisuasParams
    t_end: float = DEFAULT_T_END
    rel_tol: float = DEFAULT_REL_TOL
    abs_tol: float = DEFAULT_ABS_TOL
    task: dict[str, str] = field(default_factory=dict)
    task_lines: dict[str, int] = field(default_factory=dict)

    def canonical(self) -> str:
        """Deterministic re-serialization used for scenario hashing."""
        lines = [f"model = {self.model}"]
        if self.model == "saias":
            for key in SAIAS_FLOAT_KEYS:
                lines.append(f"{key} = {getattr(self.params, key):.17g}")
            for key in SAIAS_RATE_KEYS:
                lines.append(f"{key} = {getattr(self.params, key).spec_string()}")
        else:
            for key in SAUISUAS_PARAM_NAMES:
                lines.append(f"{key} = {getattr(self.params, key):.17g}")
        lines.append(f"t_end = {self.t_end:.17g}")
        lines.append(f"rel_tol = {self.rel_tol:.17g}")
        lines.append(f"abs_tol = {self.abs_tol:.17g}")
        if self.task:
            lines.append("[task]")
            for key in sorted(self.task):
                lines.append(f"{key} = {self.task[key]}")
        return "\n".join(lines) + "\n"


def _split_lines(text: str):
    """Yield (line_no, section, key, value) for every assignment."""
    section = "main"
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip()
            if name != "task":
                raise ConfigError(f"line {line_no}: unknown section [{name}]")
            section = "task"
            continue
        if "=" not in line:
            raise ConfigError(f"line {line_no}: expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigError(f"line {line_no}: empty key")
        if not value:
            raise ConfigError(f"line {line_no}: key {key!r} has no value")
        yield line_no, section, key, value


def _parse_float(key: str, value: str, line_no: int) -> float:
    try:
        return float(value)
    except ValueError:
        raise ConfigError(f"line {line_no}: value for {key!r} is not a number: {value!r}")


def parse_config(text: str) -> ScenarioConfig:
    """Parse and validate a scenario; errors name the offending line/key."""
    main: dict[str, tuple[str, int]] = {}
    task: dict[str, tuple[str, int]] = {}
    for line_no, section, key, value in _split_lines(text):
        target = main if section == "main" else task
        if key in target:
            raise ConfigError(f"line {line_no}: duplicate key {key!r}")
        target[key] = (value, line_no)

    if not main:
        raise ConfigError("empty configuration: a model and its parameters are required")
    if "model" not in main:
        raise ConfigError("missing required key 'model' (saias or sauisuas)")
    model, model_line = main.pop("model")
    if model not in ("saias", "sauisuas"):
        raise ConfigError(
            f"line {model_line}: model must be 'saias' or 'sauisuas', got {model!r}"
        )

    solver = {"t_end": DEFAULT_T_END, "rel_tol": DEFAULT_REL_TOL, "abs_tol": DEFAULT_ABS_TOL}
    for key in SOLVER_KEYS:
        if key in main:
            value, line_no = main.pop(key)
            solver[key] = _parse_float(key, value, line_no)
    if not solver["t_end"] > 0.0:
        raise ConfigError(f"t_end must be positive, got {solver['t_end']}")
    for key in ("rel_tol", "abs_tol"):
        if not 0.0 < solver[key] <= 1e-2:
            raise ConfigError(f"{key} must lie in (0, 1e-2], got {solver[key]}")

    if model == "saias":
        param_keys = SAIAS_FLOAT_KEYS + SAIAS_RATE_KEYS
    else:
        param_keys = SAUISUAS_PARAM_NAMES
    unknown = [k for k in main if k not in param_keys]
    if unknown:
        key = unknown[0]
        raise ConfigError(
            f"line {main[key][1]}: unknown key {key!r} for model {model!r}"
        )
    missing = [k for k in param_keys if k not in main]
    if missing:
        raise ConfigError(
            f"model {model!r} is missing required parameter(s): {', '.join(missing)}"
        )

    try:
        if model == "saias":
            kwargs = {k: _parse_float(k, main[k][0], main[k][1]) for k in SAIAS_FLOAT_KEYS}
            for k in SAIAS_RATE_KEYS:
                kwargs[k] = RateFunction.parse(main[k][0])
            params: SaiasParams | SauisuasParams = SaiasParams(**kwargs)
        else:
            kwargs = {k: _parse_float(k, main[k][0], main[k][1]) for k in SAUISUAS_PARAM_NAMES}
            params = SauisuasParams(**kwargs)
    except InvalidInputError as exc:
        raise ConfigError(f"invalid model parameters: {exc}")

    return ScenarioConfig(
        model=model,
        params=params,
        t_end=solver["t_end"],
        rel_tol=solver["rel_tol"],
        abs_tol=solver["abs_tol"],
        task={k: v for k, (v, _) in task.items()},
        task_lines={k: n for k, (_, n) in task.items()},
    )
