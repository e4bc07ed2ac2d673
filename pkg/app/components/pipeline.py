# ==========================================
# Shared Pipeline Steps for the Subcommands
# ==========================================

import logging
import math

from calculators.nonlinearity import build, builtin
from calculators.orbit import solve_all
from calculators.periodmap import crossings, sample
from calculators.dde import HistorySegment
from config import settings
from utils.errors import ConfigError

logger = logging.getLogger(__name__)


def nonlinearity_from(cfg):
    c = cfg.nonlinearity
    options = dict(grid_extent=c.grid_extent, grid_n=c.grid_n, tol=c.tol, feedback=c.feedback)
    if c.builtin is not None:
        return builtin(c.builtin, c.params, **options)
    return build(c.expr, c.params, **options)


def table_from(cfg, nl):
    return sample(nl, cfg.a_max, cfg.m)


def orbits_from(cfg, nl, table):
    """
    Crossings of the sampled table and one OrbitRecord per bracket. Refuses
    locally constant maps.
    """
    found = crossings(table, cfg.n_max)
    return found, solve_all(nl, found)


def history_from(spec: str, N: int = settings.HISTORY_N) -> HistorySegment:
    """
    Parses `const:V`, `cos` or `sin:K` into a history segment on [-1, 0].
    """
    kind, _, arg = spec.partition(":")
    try:
        if kind == "const" and arg:
            value = float(arg)
            return HistorySegment.from_function(lambda th: value, N)
        if kind == "cos" and not arg:
            return HistorySegment.from_function(lambda th: math.cos(math.pi * th / 2.0), N)
        if kind == "sin" and arg:
            k = float(arg)
            return HistorySegment.from_function(lambda th: math.sin(k * math.pi * th), N)
    except ValueError:
        pass
    raise ConfigError(f"Invalid history '{spec}'; expected const:V, cos or sin:K", module="cli")
