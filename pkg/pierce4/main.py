"""Command-line entry point."""

import argparse
import json
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from pierce4 import __version__
from pierce4.cli.commands import cmd_approx, cmd_bench, cmd_gen, cmd_pierce, cmd_verify
from pierce4.config import settings
from pierce4.errors import InvalidGeometry, InvalidInstance, Pierce4Error

logger = logging.getLogger(__name__)

INPUT_ERRORS = (InvalidGeometry, InvalidInstance, ValidationError, FileNotFoundError, json.JSONDecodeError)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pierce4", description="Piercing translate families with at most four points.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate an instance satisfying the cross-intersection hypothesis")
    gen.add_argument("--body", default="square", help="square, triangle, disk256, ellipse256[:ratio], reuleaux192, gon<k>, random:<seed>[:<n>]")
    gen.add_argument("--families", type=int, default=3)
    gen.add_argument("--sizes", default="4", help="comma separated family sizes, or one size for all")
    gen.add_argument("--spread", type=float, default=0.25)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--max-rejections", type=int, default=10_000)
    gen.add_argument("--out")
    gen.set_defaults(handler=cmd_gen)

    approx = sub.add_parser("approx", help="inscribed parallelogram P and Q = 2P + t for one direction")
    source = approx.add_mutually_exclusive_group()
    source.add_argument("--body", default="square")
    source.add_argument("--body-file")
    approx.add_argument("--direction", type=float, default=0.0, help="direction u in degrees")
    approx.add_argument("--tol", type=float, default=settings.contain_tol)
    approx.add_argument("--svg")
    approx.add_argument("--out")
    approx.set_defaults(handler=cmd_approx)

    pierce = sub.add_parser("pierce", help="pierce an instance and verify the certificate")
    pierce.add_argument("--instance", required=True)
    pierce.add_argument("--certificate-out")
    pierce.add_argument("--svg")
    pierce.add_argument("--out")
    pierce.set_defaults(handler=cmd_pierce)

    verify = sub.add_parser("verify", help="re-check a stored certificate")
    verify.add_argument("--instance", required=True)
    verify.add_argument("--certificate", required=True)
    verify.add_argument("--tol", type=float, default=settings.contain_tol)
    verify.add_argument("--out")
    verify.set_defaults(handler=cmd_verify)

    bench = sub.add_parser("bench", help="run a seeded corpus")
    bench.add_argument("--corpus", default="default", help="'default' or a corpus JSON file")
    bench.add_argument("--seeds", default="0:100", help="start:stop")
    bench.add_argument("--jobs", type=int, default=1)
    bench.add_argument("--probe", action="store_true", help="compare with brute-force optima")
    bench.add_argument("--out")
    bench.set_defaults(handler=cmd_bench)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(
        level=getattr(logging, settings.log_level, logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    args = build_parser().parse_args(argv)

    try:
        return args.handler(args)
    except INPUT_ERRORS as e:
        logger.error(f"Invalid input: {e}")
        return 2
    except Pierce4Error as e:
        logger.error(f"{type(e).__name__}: {e.message}")
        print(json.dumps(e.to_dict(), indent=2, default=str), file=sys.stderr)
        return 1
    except Exception:
        logger.exception("Unexpected error")
        return 1


if __name__ == "__main__":
    sys.exit(main())
