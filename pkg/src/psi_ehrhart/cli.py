"""Command-line client for the exact-computation handlers.

Every subcommand is deterministic given identical cache state.  Exit
codes: 0 success, 2 usage or cache-handling problems, 3 a mathematical
cross-check failed (dual-route identity, f*-nonnegativity, triangulation
mismatch).  The memo cache is loaded from --cache or $PSI_EHRHART_CACHE
before the command runs and written back on success.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from . import __version__
from . import handlers
from .cache_store import ENV_VAR, default_cache_path, install, load, save, snapshot
from .ehrhart_geom import FIXTURE_NAMES
from .errors import CacheError, DomainError, InconsistencyError


def _dvector(text: str) -> List[int]:
    """Comma-separated nonnegative integers; empty string is the empty
    vector."""
    if text.strip() == "":
        return []
    try:
        values = [int(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"{text!r} is not a comma-separated integer list") from None
    if any(v < 0 for v in values):
        raise argparse.ArgumentTypeError("exponents must be nonnegative")
    return values


def _kappa_vector(text: str) -> List[int]:
    values = _dvector(text)
    if not values:
        raise argparse.ArgumentTypeError("kappa index list must be nonempty")
    if any(v < 1 for v in values):
        raise argparse.ArgumentTypeError(
            "kappa indices must be >= 1 (substitute kappa_0 = 2g-2+n first)")
    return values


def _nonneg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 0:
        raise argparse.ArgumentTypeError("value must be >= 0")
    return value


def _positive(text: str) -> int:
    value = _nonneg(text)
    if value < 1:
        raise argparse.ArgumentTypeError("value must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="psi-ehrhart",
        description="Exact psi-class intersection numbers, integer-valued "
                    "intersection polynomials, and Ehrhart counting for "
                    "inside-out polytopes.")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--json", action="store_true",
                        help="emit the machine-readable payload")
    parser.add_argument("--cache", metavar="PATH", default=None,
                        help=f"memo cache file (default: ${ENV_VAR})")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("psi", help="intersection number for a literal insertion list")
    p.add_argument("--g", type=_nonneg, required=True, help="genus")
    p.add_argument("--d", type=_dvector, required=True,
                   help="exponents, e.g. 3,2 (no completion slot is added)")

    p = sub.add_parser("kappa", help="kappa/psi monomial integral")
    p.add_argument("--g", type=_nonneg, required=True)
    p.add_argument("--kappa", type=_kappa_vector, required=True,
                   help="kappa indices, each >= 1")
    p.add_argument("--d", type=_dvector, default=[],
                   help="psi exponents, one per marked point")

    p = sub.add_parser("lpoly", help="L_d(g) with f*, m(d), C(d), leading coefficient")
    p.add_argument("--d", type=_dvector, required=True)

    p = sub.add_parser("fstar", help="f*-vector of L_d(g+m) and its Breuer verdict")
    p.add_argument("--d", type=_dvector, required=True)

    p = sub.add_parser("scan", help="validate every d-vector in range")
    p.add_argument("--max-total", type=_nonneg, required=True)
    p.add_argument("--max-parts", type=_nonneg, required=True)

    p = sub.add_parser("count", help="lattice count of a fixture dilate")
    p.add_argument("--fixture", required=True, choices=FIXTURE_NAMES)
    p.add_argument("--g", type=_positive, required=True)

    p = sub.add_parser("interpolate", help="Ehrhart polynomial of a fixture")
    p.add_argument("--fixture", required=True, choices=FIXTURE_NAMES)

    p = sub.add_parser("verify", help="triangulation and L-identity checks")
    p.add_argument("--fixture", required=True, choices=FIXTURE_NAMES)
    p.add_argument("--gmax", type=_positive, default=6)

    return parser


def _dispatch(args: argparse.Namespace) -> dict:
    if args.subcommand == "psi":
        return handlers.run_psi(args.g, args.d)
    if args.subcommand == "kappa":
        return handlers.run_kappa(args.g, args.kappa, args.d)
    if args.subcommand == "lpoly":
        return handlers.run_lpoly(args.d)
    if args.subcommand == "fstar":
        return handlers.run_fstar(args.d)
    if args.subcommand == "scan":
        return handlers.run_scan(args.max_total, args.max_parts)
    if args.subcommand == "count":
        return handlers.run_count(args.fixture, args.g)
    if args.subcommand == "interpolate":
        return handlers.run_interpolate(args.fixture)
    if args.subcommand == "verify":
        return handlers.run_verify(args.fixture, args.gmax)
    raise DomainError(f"unknown subcommand {args.subcommand!r}")


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cache_path = args.cache or default_cache_path()
    try:
        if cache_path and os.path.exists(cache_path):
            install(load(cache_path))
        payload = _dispatch(args)
        if cache_path:
            save(snapshot(), cache_path)
    except InconsistencyError as exc:
        print(f"inconsistency: {exc}", file=sys.stderr)
        return 3
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CacheError as exc:
        print(f"cache error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(handlers.render_plain(payload))
    return 0


if __name__ == "__main__":
    sys.exit(main())
