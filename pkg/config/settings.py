# ==========================================
# kyorbit — Settings and Run Configuration
# ==========================================

import logging
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import dataclass, field, replace
from pathlib import Path

from utils.errors import ConfigError
from utils.num_utils import validate_at_least, validate_positive

logger = logging.getLogger(__name__)

# nonlinearity validation
GRID_EXTENT = 10.0
GRID_N = 64
BUILTIN_SYMMETRY_TOL = 1e-10
EXPR_SYMMETRY_TOL = 1e-8

# planar integration
RTOL = 1e-10
ATOL = 1e-12
EVENT_TOL = 1e-12
MIN_AMPLITUDE = 1e-6
NO_RETURN_CAP = 1e6
MAX_STEP = 0.01
SYMMETRY_SAMPLES = 64

# period map
A_MAX = 5.0
GRID_M = 64
PLATEAU_REL_TOL = 1e-9
SLOPE_REL_STEP = 1e-4
NOISE_FACTOR = 10.0
TANGENCY_REFINE = 4
ZERO_LIMIT_AMPLITUDES = (0.05, 0.10, 0.15)

# orbits
N_MAX = 3
ROOT_TOL = 1e-10
ROOT_MAX_EVALS = 200
SOLUTION_POINTS = 400

# dde verification
HISTORY_N = 64
DDE_RTOL = 1e-9
BLOWUP = 1e12
RESIDUAL_SAMPLES = 512
SIGN_REFINE_STEPS = 8
MONODROMY_N = 128
MONODROMY_MIN_N = 64
EPS_SPEC = 1e-3
MULTIPLIER_FLOOR = 1e-6
DRIFT_TOL = 1e-3

# simulation
T_MAX = 200.0

OUTPUT_FORMATS = ("csv", "json")

_SECTIONS = {
    "nonlinearity": {"expr", "builtin", "feedback", "grid_extent", "grid_n", "tol", "params"},
    "periodmap": {"a_max", "m"},
    "orbits": {"n_max", "solution_points"},
    "floquet": {"mesh", "eps_spec"},
    "simulate": {"t_max", "history"},
    "bifurcate": {"alpha_lo", "alpha_hi"},
    "output": {"dir", "formats", "svg", "dot"},
}


@dataclass(frozen=True)
class NonlinearityConfig:
    expr: str | None = None
    builtin: str | None = None
    params: dict = field(default_factory=dict)
    feedback: str | None = None
    grid_extent: float = GRID_EXTENT
    grid_n: int = GRID_N
    tol: float | None = None


@dataclass(frozen=True)
class RunConfig:
    nonlinearity: NonlinearityConfig = field(default_factory=NonlinearityConfig)
    a_max: float = A_MAX
    m: int = GRID_M
    n_max: int = N_MAX
    solution_points: int = SOLUTION_POINTS
    mesh: int = MONODROMY_N
    eps_spec: float = EPS_SPEC
    t_max: float = T_MAX
    history: str = "const:0.5"
    alpha_lo: float = 0.1
    alpha_hi: float = 10.0
    out_dir: Path = Path("out")
    formats: tuple = OUTPUT_FORMATS
    svg: bool = False
    dot: bool = False

    def validate(self) -> "RunConfig":
        nl = self.nonlinearity
        if (nl.expr is None) == (nl.builtin is None):
            raise ConfigError("Exactly one of nonlinearity.expr or nonlinearity.builtin is required.",
                              module="config")
        if nl.feedback not in (None, "positive", "negative"):
            raise ConfigError("nonlinearity.feedback must be 'positive' or 'negative'.", module="config")
        validate_positive(nl.grid_extent, "nonlinearity.grid_extent")
        validate_at_least(nl.grid_n, 8, "nonlinearity.grid_n")
        if nl.tol is not None:
            validate_positive(nl.tol, "nonlinearity.tol")
        validate_positive(self.a_max, "periodmap.a_max")
        validate_at_least(self.m, 16, "periodmap.m")
        validate_at_least(self.n_max, 1, "orbits.n_max")
        validate_at_least(self.solution_points, 2, "orbits.solution_points")
        validate_at_least(self.mesh, MONODROMY_MIN_N, "floquet.mesh")
        validate_positive(self.eps_spec, "floquet.eps_spec")
        validate_positive(self.t_max, "simulate.t_max")
        validate_positive(self.alpha_lo, "bifurcate.alpha_lo")
        if self.alpha_hi <= self.alpha_lo:
            raise ConfigError("bifurcate.alpha_hi must exceed alpha_lo.", module="config")
        unknown = set(self.formats) - set(OUTPUT_FORMATS)
        if unknown:
            raise ConfigError(f"Unknown output formats: {sorted(unknown)}", module="config")
        return self


def _check_keys(data: dict) -> None:
    for section, body in data.items():
        if section not in _SECTIONS:
            raise ConfigError(f"Unknown config section [{section}]", module="config")
        if not isinstance(body, dict):
            raise ConfigError(f"[{section}] must be a table", module="config")
        extra = set(body) - _SECTIONS[section]
        if extra:
            raise ConfigError(f"Unknown keys in [{section}]: {sorted(extra)}", module="config")


def config_from_dict(data: dict) -> RunConfig:
    """
    Builds a RunConfig from parsed TOML data.
    """
    _check_keys(data)
    nl = dict(data.get("nonlinearity", {}))
    params = {str(k): float(v) for k, v in nl.pop("params", {}).items()}
    nonlinearity = NonlinearityConfig(params=params, **nl)

    pm = data.get("periodmap", {})
    orb = data.get("orbits", {})
    flq = data.get("floquet", {})
    sim = data.get("simulate", {})
    bif = data.get("bifurcate", {})
    out = data.get("output", {})

    defaults = RunConfig()
    return RunConfig(
        nonlinearity=nonlinearity,
        a_max=float(pm.get("a_max", defaults.a_max)),
        m=int(pm.get("m", defaults.m)),
        n_max=int(orb.get("n_max", defaults.n_max)),
        solution_points=int(orb.get("solution_points", defaults.solution_points)),
        mesh=int(flq.get("mesh", defaults.mesh)),
        eps_spec=float(flq.get("eps_spec", defaults.eps_spec)),
        t_max=float(sim.get("t_max", defaults.t_max)),
        history=str(sim.get("history", defaults.history)),
        alpha_lo=float(bif.get("alpha_lo", defaults.alpha_lo)),
        alpha_hi=float(bif.get("alpha_hi", defaults.alpha_hi)),
        out_dir=Path(out.get("dir", defaults.out_dir)),
        formats=tuple(out.get("formats", defaults.formats)),
        svg=bool(out.get("svg", defaults.svg)),
        dot=bool(out.get("dot", defaults.dot)),
    )


def load_run_config(path) -> RunConfig:
    """
    Reads a TOML run configuration.
    """
    path = Path(path)
    try:
        with path.open("rb") as fh:
            data = tomllib.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"Config file not found: {path}", module="config")
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"Invalid TOML in {path}: {exc}", module="config")
    logger.debug("Loaded config %s", path)
    return config_from_dict(data)


def merge_overrides(cfg: RunConfig, overrides: dict) -> RunConfig:
    """
    Applies CLI flag overrides (None values are ignored). Nonlinearity keys are
    given with a `nonlinearity.` prefix.
    """
    nl_updates = {}
    top_updates = {}
    for key, value in overrides.items():
        if value is None:
            continue
        if key.startswith("nonlinearity."):
            nl_updates[key.split(".", 1)[1]] = value
        else:
            top_updates[key] = value

    nonlinearity = cfg.nonlinearity
    if "expr" in nl_updates or "builtin" in nl_updates:
        # a flag-level definition replaces the config-level one
        nonlinearity = replace(nonlinearity, expr=None, builtin=None)
    if "params" in nl_updates:
        nl_updates["params"] = {**nonlinearity.params, **nl_updates["params"]}
    nonlinearity = replace(nonlinearity, **nl_updates)
    return replace(cfg, nonlinearity=nonlinearity, **top_updates)
