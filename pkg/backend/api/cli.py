"""Command-line entry point: ``python -m backend.api.cli <verb> ...``"""

import argparse
import json
import logging
import sys
from typing import Callable, Dict, Optional, Sequence

from ..core.cache import flush_cache, get_cache
from ..core.config import settings
from ..core.errors import ConfigError, EngineError
from ..core.logger import setup_logging
from ..models.elliptic import compute_C
from ..models.exactnum import SeriesRing
from ..models.identities import registry
from ..models.macdonald import principal_P, principal_P_inf, qt_binomial, refined_vertex
from ..models.nekrasov import PROVENANCES, fnm, hbar, un, zw_text
from ..models.partitions import Partition
from ..models.verifier import EXIT_CONFIG, EXIT_ENGINE, EXIT_OK, exit_code, run_all
from .schemas import build_run_config

logger = logging.getLogger(__name__)

COMPUTE_OBJECTS = ("fnm", "hbar", "un", "C-table", "binomial", "principal", "vertex")


def partition_arg(text: str) -> Partition:
    """``"2,1"`` or ``"()"`` to a partition"""
    body = text.strip().strip("()")
    try:
        return Partition(tuple(int(x) for x in body.split(",") if x.strip()))
    except (ValueError, EngineError) as e:
        raise argparse.ArgumentTypeError(f"not a partition: {text}") from e


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qtnekrasov",
        description="Exact verification of q,t hook-length identities as truncated series.",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
    parser.add_argument("--cache-dir", default=None, help=f"Branching cache directory (default: {settings.QTNO_CACHE_DIR})")
    sub = parser.add_subparsers(dest="verb", required=True)

    verify = sub.add_parser("verify", help="Verify registry entries and write reports")
    verify.add_argument("--id", dest="ids", action="append", default=None, help="Identity id. Repeatable.")
    verify.add_argument("--all", action="store_true", help="Verify every registry entry")
    verify.add_argument("--tmax", dest="K", type=int, default=None, help="T-order K")
    verify.add_argument("--qt-deg", dest="degree", type=int, default=None, help="Degree window of q and t")
    verify.add_argument("--u-window", dest="u_window", type=int, default=None, help="u runs over [-U, U]")
    verify.add_argument("--p-max", dest="p_max", type=int, default=None, help="p-order M")
    verify.add_argument("--profile", default=None, help="Named window profile, e.g. desk")
    verify.add_argument("--jobs", type=int, default=None, help="Worker processes")
    verify.add_argument("--out", default=None, help="Write the reports here instead of stdout")
    verify.add_argument("--format", choices=("json", "text"), default=None)
    verify.add_argument("--config", default=None, help="key=value file mirroring the long flags")

    compute = sub.add_parser("compute", help="Print one exact object in canonical text form")
    compute.add_argument("object", choices=COMPUTE_OBJECTS)
    compute.add_argument("--n", type=int, default=None)
    compute.add_argument("--m", type=int, default=None)
    compute.add_argument("--g", type=int, default=1)
    compute.add_argument("--max-m", dest="max_m", type=int, default=None,
                         help=f"p-order of the C table (default: {settings.DEFAULT_P_ORDER})")
    compute.add_argument("--provenance", choices=PROVENANCES, default="hook_form")
    compute.add_argument("--qt-deg", dest="degree", type=int, default=None)
    compute.add_argument("--lam", type=partition_arg, default=Partition())
    compute.add_argument("--mu", type=partition_arg, default=Partition())
    compute.add_argument("--nu", type=partition_arg, default=Partition())

    sub.add_parser("list", help="List registry entries")

    cache = sub.add_parser("cache", help="Inspect or clear the branching cache")
    cache.add_argument("action", choices=("clear", "stat"))
    return parser


def cmd_verify(args: argparse.Namespace) -> int:
    flags = {
        "ids": args.ids, "all": args.all, "K": args.K, "degree": args.degree, "u_window": args.u_window,
        "p_max": args.p_max, "profile": args.profile, "jobs": args.jobs, "out": args.out,
        "format": args.format, "cache_dir": args.cache_dir,
    }
    config = build_run_config(flags, args.config)
    ids = list(registry()) if config.all else config.ids
    if not ids:
        raise ConfigError("nothing to verify: pass --id or --all")
    overrides = {i: config.overrides_for(i) for i in ids}
    reports = run_all(ids, overrides, config.jobs, cache_dir=config.cache_dir)
    if config.format == "json":
        text = json.dumps([r.as_json() for r in reports], indent=2)
    else:
        text = "\n".join(r.to_text() for r in reports)
    if config.out:
        with open(config.out, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
        logger.info("Wrote %d reports to %s", len(reports), config.out)
    else:
        print(text)
    return exit_code(reports)


def _compute_text(args: argparse.Namespace) -> str:
    degree = settings.DEFAULT_QT_DEGREE if args.degree is None else args.degree
    if args.object == "fnm":
        return fnm(args.n or 1, args.m or 1, args.provenance, degree).value.to_text()
    if args.object == "hbar":
        return zw_text(hbar(args.g, args.n or 1))
    if args.object == "un":
        return zw_text(un(args.g, args.n or 1))
    if args.object == "C-table":
        max_m = settings.DEFAULT_P_ORDER if args.max_m is None else args.max_m
        return compute_C(max_m).to_text()
    ring = SeriesRing.of(q=degree, t=degree)
    if args.object == "binomial":
        return qt_binomial(args.lam, args.mu, ring).to_text()
    if args.object == "principal":
        if args.n is not None:
            return principal_P(args.lam, args.n, ring).to_text()
        return principal_P_inf(args.lam, ring).to_text()
    return refined_vertex(args.lam, args.mu, args.nu, degree, degree).to_text()


def cmd_compute(args: argparse.Namespace) -> int:
    print(_compute_text(args))
    return EXIT_OK


def cmd_list(args: argparse.Namespace) -> int:
    for entry_id in sorted(registry()):
        entry = registry()[entry_id]
        windows = " ".join(f"{k}={v}" for k, v in entry.windows().as_dict().items())
        print(f"{entry.id}\t{entry.status}\t{windows}\t{entry.anchor}")
    return EXIT_OK


def cmd_cache(args: argparse.Namespace) -> int:
    if args.action == "clear":
        dropped = get_cache().clear()
        print(f"removed {dropped} entries from {get_cache().path}")
    else:
        print(json.dumps(get_cache().stat(), indent=2, sort_keys=True))
    return EXIT_OK


COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "verify": cmd_verify,
    "compute": cmd_compute,
    "list": cmd_list,
    "cache": cmd_cache,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_CONFIG if e.code else EXIT_OK
    level = {0: settings.LOG_LEVEL, 1: "INFO"}.get(args.verbose, "DEBUG")
    setup_logging(level)
    if args.cache_dir:
        get_cache().configure(cache_dir=args.cache_dir)
    try:
        return COMMANDS[args.verb](args)
    except ConfigError as e:
        logger.error("%s", e)
        return EXIT_CONFIG
    except EngineError as e:
        logger.error("%s: %s", type(e).__name__, e)
        return EXIT_ENGINE
    finally:
        flush_cache()


if __name__ == "__main__":
    sys.exit(main())
