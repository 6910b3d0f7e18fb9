"""Command-line entry point: ``isentropic-riemann {exact,fv,sweep,figures}``.

Exit status: 0 on success, 2 for usage/configuration errors, 3 for numerical
failures, 4 for I/O errors. Failures also print a one-line JSON error record
on stderr.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import sys
from typing import Optional, Sequence

from . import experiments as ex
from .errors import ConfigurationError, DomainError, NumericalError

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4

_OVERRIDES = {
    "rho_l": float, "v_l": float, "rho_r": float, "v_r": float, "gamma": float,
    "t_final": float, "nx": int, "x_min": float, "x_max": float,
    "dt": float, "cfl": float, "theta": float, "out": str, "critical_snap_rtol": float,
}


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="key = value config file with [sections]")
    common.add_argument("--rho-l", dest="rho_l", type=float)
    common.add_argument("--v-l", dest="v_l", type=float)
    common.add_argument("--rho-r", dest="rho_r", type=float)
    common.add_argument("--v-r", dest="v_r", type=float)
    common.add_argument("--gamma", type=float)
    common.add_argument("--kappa", type=ex.parse_kappa, help="number or 'critical'")
    common.add_argument("--t-final", dest="t_final", type=float)
    common.add_argument("--nx", type=int)
    common.add_argument("--xmin", dest="x_min", type=float)
    common.add_argument("--xmax", dest="x_max", type=float)
    step = common.add_mutually_exclusive_group()
    step.add_argument("--dt", type=float)
    step.add_argument("--cfl", type=float)
    common.add_argument("--theta", type=float, help="diffusion factor in (0, 1]")
    common.add_argument("--snap-rtol", dest="critical_snap_rtol", type=float,
                        help="relative distance within which kappa snaps to the critical value")
    common.add_argument("--out", metavar="DIR")
    common.add_argument("--paper-resolution", action="store_true",
                        help="dx = 1e-4 and dt = 2e-5 with the modified (theta = 1/2) scheme")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="isentropic-riemann", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("exact", parents=[common], help="exact Riemann solution")
    sub.add_parser("fv", parents=[common], help="finite-volume run")
    sweep = sub.add_parser("sweep", parents=[common], help="kappa sweep")
    sweep.add_argument("--schedule", type=ex.parse_schedule, dest="kappa_schedule",
                       help="comma-separated, strictly decreasing; 'critical' allowed")
    sweep.add_argument("--fv", action="store_true", help="also record finite-volume max density")
    sub.add_parser("figures", parents=[common], help="profile CSVs and plot scripts for both figures")
    return parser


def _resolve_config(args: argparse.Namespace) -> ex.ExperimentConfig:
    cfg = ex.load_config(args.config) if args.config else ex.ExperimentConfig()
    values = {k: getattr(args, k) for k in _OVERRIDES if getattr(args, k, None) is not None}
    if args.dt is not None:
        values["cfl"] = None
    elif args.cfl is not None:
        values["dt"] = None
    if args.kappa is not None:
        values["kappa"] = args.kappa
    if getattr(args, "kappa_schedule", None) is not None:
        values["kappa_schedule"] = args.kappa_schedule
    if getattr(args, "fv", False):
        values["sweep_mode"] = "fv"
    if args.paper_resolution and args.command != "figures":
        values["nx"] = int(round((values.get("x_max", cfg.x_max) - values.get("x_min", cfg.x_min)) / ex.REFERENCE_DX))
        values.update(dt=ex.REFERENCE_DT, cfl=None, theta=values.get("theta", 0.5))
    return dataclasses.replace(cfg, **values)


def _fail(kind: str, exc: BaseException, code: int) -> int:
    record = {"status": "error", "kind": kind, "type": type(exc).__name__, "message": str(exc)}
    if getattr(exc, "time", None) is not None:
        record["time"] = exc.time
    print(json.dumps(record), file=sys.stderr)
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = _resolve_config(args)
        if args.command == "exact":
            _, meta = ex.cmd_exact(cfg)
            print(json.dumps(meta["result"], default=ex._json_default))
        elif args.command == "fv":
            _, meta = ex.cmd_fv(cfg)
            print(json.dumps(meta["result"], default=ex._json_default))
        elif args.command == "sweep":
            table, _ = ex.cmd_sweep(cfg)
            sys.stdout.write(table.to_csv())
        else:
            for path in ex.cmd_figures(cfg, paper_resolution=args.paper_resolution):
                print(path)
    except (ConfigurationError, DomainError) as exc:
        return _fail("usage", exc, EXIT_USAGE)
    except NumericalError as exc:
        return _fail("numerical", exc, EXIT_NUMERICAL)
    except OSError as exc:
        return _fail("io", exc, EXIT_IO)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
