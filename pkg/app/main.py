# ==========================================
# kyorbit — Periodic Orbits of x'(t) = f(x(t), x(t-1))
# ==========================================

import argparse
import logging
import sys
from pathlib import Path

from config.settings import RunConfig, load_run_config, merge_overrides
from utils.errors import ConfigError, KyorbitError

from app.commands import (
    bifurcate_command,
    floquet_command,
    orbits_command,
    periodmap_command,
    simulate_command,
    validate_command,
    verify_command,
)

logger = logging.getLogger("kyorbit")

COMMANDS = {
    "validate": validate_command.run,
    "periodmap": periodmap_command.run,
    "orbits": orbits_command.run,
    "verify": verify_command.run,
    "floquet": floquet_command.run,
    "simulate": simulate_command.run,
    "bifurcate": bifurcate_command.run,
}


class _Parser(argparse.ArgumentParser):
    # usage errors carry exit code 3 instead of argparse's 2
    def error(self, message):
        raise ConfigError(message, module="cli")


def _param(text: str) -> tuple:
    name, sep, value = text.partition("=")
    if not sep or not name:
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE, got '{text}'")
    try:
        return name.strip(), float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"parameter value for '{name}' is not a number")


# --------------------------------------------------
# Flags
# --------------------------------------------------
def _add_common(p):
    p.add_argument("--config", type=Path, help="TOML run configuration")
    p.add_argument("--out", type=Path, help="output directory (default: out)")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    p.add_argument("-q", "--quiet", action="store_true", help="errors only")

    nl = p.add_argument_group("nonlinearity")
    source = nl.add_mutually_exclusive_group()
    source.add_argument("--expr", help="f(xi, eta) in the expression language")
    source.add_argument("--builtin", help="builtin family: linear, cubic_hard, tanh_soft, sinh, mixed_spring")
    nl.add_argument("--param", type=_param, action="append", metavar="NAME=VALUE",
                    help="parameter binding (repeatable)")
    nl.add_argument("--feedback", choices=("positive", "negative"), help="declared feedback sign")
    nl.add_argument("--grid-extent", type=float, help="validation grid half-width R")
    nl.add_argument("--grid-n", type=int, help="validation grid points per axis")
    nl.add_argument("--tol", type=float, help="relative symmetry tolerance")


def _add_grid(p):
    p.add_argument("--amax", type=float, help="largest sampled amplitude")
    p.add_argument("--m", type=int, help="number of amplitude samples")


def _add_orbits(p):
    _add_grid(p)
    p.add_argument("--nmax", type=int, help="highest branch index n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kyorbit", description=__doc__ or "Periodic orbits of x'(t) = f(x(t), x(t-1)).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="check symmetry and feedback of f")
    _add_common(p)

    p = sub.add_parser("periodmap", help="sample the period map T_f")
    _add_common(p)
    _add_grid(p)
    p.add_argument("--nmax", type=int, help="realizable lines drawn in the figure")
    p.add_argument("--svg", action="store_true", default=None, help="write periodmap.svg")

    p = sub.add_parser("orbits", help="periodic orbits with Morse indices")
    _add_common(p)
    _add_orbits(p)
    p.add_argument("--points", type=int, help="samples per orbit CSV")
    p.add_argument("--dot", action="store_true", default=None, help="write orbits.dot")
    p.add_argument("--svg", action="store_true", default=None, help="write periodmap.svg")

    p = sub.add_parser("verify", help="DDE residual and symmetry residuals")
    _add_common(p)
    _add_orbits(p)
    p.add_argument("--amplitude", type=float, help="only the symmetry residuals at this amplitude")

    p = sub.add_parser("floquet", help="Floquet spectra and the Morse-index cross-check")
    _add_common(p)
    _add_orbits(p)
    p.add_argument("--mesh", type=int, help="history mesh N")
    p.add_argument("--eps-spec", type=float, help="unit-circle margin for unstable multipliers")

    p = sub.add_parser("simulate", help="method-of-steps simulation")
    _add_common(p)
    p.add_argument("--history", help="const:V, cos or sin:K")
    p.add_argument("--tmax", type=float, help="final time")

    p = sub.add_parser("bifurcate", help="Hopf and saddle-node candidates in alpha")
    _add_common(p)
    _add_grid(p)
    p.add_argument("--alpha-lo", type=float, help="lower end of the alpha range")
    p.add_argument("--alpha-hi", type=float, help="upper end of the alpha range")
    p.add_argument("--nmax", type=int, help="highest branch index n")
    return parser


def _overrides(args) -> dict:
    get = lambda name: getattr(args, name, None)  # noqa: E731
    params = dict(args.param) if args.param else None
    return {
        "nonlinearity.expr": args.expr,
        "nonlinearity.builtin": args.builtin,
        "nonlinearity.params": params,
        "nonlinearity.feedback": args.feedback,
        "nonlinearity.grid_extent": args.grid_extent,
        "nonlinearity.grid_n": args.grid_n,
        "nonlinearity.tol": args.tol,
        "a_max": get("amax"),
        "m": get("m"),
        "n_max": get("nmax"),
        "solution_points": get("points"),
        "mesh": get("mesh"),
        "eps_spec": get("eps_spec"),
        "t_max": get("tmax"),
        "history": get("history"),
        "alpha_lo": get("alpha_lo"),
        "alpha_hi": get("alpha_hi"),
        "out_dir": args.out,
        "svg": get("svg"),
        "dot": get("dot"),
    }


def _configure_logging(args) -> None:
    level = logging.DEBUG if args.verbose else logging.ERROR if args.quiet else logging.WARNING
    logging.basicConfig(format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    logging.getLogger().setLevel(level)


# --------------------------------------------------
# Entry point
# --------------------------------------------------
def run(argv=None) -> int:
    """
    Parses flags, merges them over the config file and dispatches the
    subcommand. Returns the process exit code.
    """
    try:
        args = build_parser().parse_args(argv)
        _configure_logging(args)
        cfg = load_run_config(args.config) if args.config else RunConfig()
        cfg = merge_overrides(cfg, _overrides(args)).validate()
        logger.debug("Running %s with %s", args.command, cfg)
        return COMMANDS[args.command](cfg, args)
    except KyorbitError as exc:
        print(f"error [{exc.module}]: {exc.args[0]}", file=sys.stderr)
        return exc.exit_code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
