"""Command handlers; each returns the process exit code."""

import argparse
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, List, Optional

from pierce4.approx import find_homothetic_pair, verify_approx
from pierce4.cli.schemas import (
    ApproxResultModel,
    CertificateModel,
    InstanceModel,
    PolygonModel,
    RunReport,
    digest,
)
from pierce4.cli.svg import approx_scene, pierce_scene
from pierce4.config import settings
from pierce4.errors import InvalidGeometry
from pierce4.geometry import ConvexPolygon, Direction
from pierce4.oracles.generator import CorpusConfig, GenConfig, gen_body, gen_instance, iter_corpus, parse_body
from pierce4.oracles.probe import run_case, summarize, tabulate
from pierce4.piercing import pierce, verify_certificate

logger = logging.getLogger(__name__)


# ============ Helpers ============

def _read_json(path: str) -> Any:
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def _emit(text: str, out: Optional[str]):
    if out:
        Path(out).write_text(text, encoding="utf-8")
        logger.info(f"Wrote {out}")
    else:
        sys.stdout.write(text)


def _seed(args: argparse.Namespace) -> int:
    """PIERCE4_SEED wins over --seed."""
    return settings.seed if settings.seed is not None else args.seed


def _tolerances() -> dict:
    return settings.pierce_config.model_dump()


def _parse_sizes(text: str) -> List[int]:
    try:
        return [int(s) for s in text.split(",") if s.strip()]
    except ValueError as e:
        raise InvalidGeometry(f"bad --sizes value {text!r}") from e


def _parse_seeds(text: str) -> range:
    """'a:b' is the half-open range [a, b); a single number is [0, n)."""
    try:
        if ":" in text:
            start, stop = text.split(":", 1)
            return range(int(start), int(stop))
        return range(int(text))
    except ValueError as e:
        raise InvalidGeometry(f"bad --seeds value {text!r}") from e


def _load_body(args: argparse.Namespace) -> ConvexPolygon:
    if getattr(args, "body_file", None):
        return PolygonModel.model_validate(_read_json(args.body_file)).to_polygon()
    return gen_body(parse_body(args.body))


def _command(args: argparse.Namespace) -> List[str]:
    return [f"{k}={v}" for k, v in sorted(vars(args).items()) if k != "handler"]


# ============ Commands ============

def cmd_gen(args: argparse.Namespace) -> int:
    """Write a generated instance as JSON."""
    sizes = _parse_sizes(args.sizes)
    cfg = GenConfig(
        seed=_seed(args),
        n_families=args.families,
        sizes=sizes,
        spread=args.spread,
        body=parse_body(args.body),
        max_rejections=args.max_rejections,
    )
    inst = gen_instance(cfg)
    _emit(InstanceModel.from_instance(inst).model_dump_json(indent=2) + "\n", args.out)
    return 0


def cmd_approx(args: argparse.Namespace) -> int:
    """Run the parallelogram approximation for one body and direction."""
    started = time.perf_counter()
    body = _load_body(args)
    u = Direction.from_degrees(args.direction)
    approx_cfg = settings.approx_config
    result = find_homothetic_pair(body, u, approx_cfg)
    check = verify_approx(body, result, args.tol, approx_cfg.ratio_slack, approx_cfg.residual_tol)

    report = RunReport(
        command=["approx"] + _command(args),
        input_digest=digest(body.to_list()),
        passed=check.passed,
        result=ApproxResultModel.from_result(result).model_dump(),
        verification=check.to_dict(),
        timing_s=time.perf_counter() - started,
        tolerances={**approx_cfg.model_dump(), "verify_tol": args.tol},
    )
    if args.svg:
        approx_scene(body, result).save(args.svg)
    _emit(report.model_dump_json(indent=2) + "\n", args.out)
    if not check.passed:
        logger.error(f"Approximation failed checks: {check.failures()}")
    return 0 if check.passed else 1


def cmd_pierce(args: argparse.Namespace) -> int:
    """Pierce a stored instance and verify the certificate."""
    started = time.perf_counter()
    document = _read_json(args.instance)
    inst = InstanceModel.model_validate(document).to_instance()
    cfg = settings.pierce_config
    cert = pierce(inst, cfg)
    check = verify_certificate(inst, cert, cfg.contain_tol)

    cert_model = CertificateModel.from_certificate(cert)
    report = RunReport(
        command=["pierce"] + _command(args),
        input_digest=digest(document),
        passed=check.passed,
        result=cert_model.model_dump(mode="json"),
        verification=check.to_dict(),
        timing_s=time.perf_counter() - started,
        tolerances=_tolerances(),
    )
    if args.certificate_out:
        Path(args.certificate_out).write_text(cert_model.model_dump_json(indent=2) + "\n", encoding="utf-8")
    if args.svg:
        pierce_scene(inst, cert).save(args.svg)
    _emit(report.model_dump_json(indent=2) + "\n", args.out)
    return 0 if check.passed else 1


def cmd_verify(args: argparse.Namespace) -> int:
    """Re-check a stored certificate against a stored instance."""
    started = time.perf_counter()
    document = _read_json(args.instance)
    inst = InstanceModel.model_validate(document).to_instance()
    cert = CertificateModel.model_validate(_read_json(args.certificate)).to_certificate()
    check = verify_certificate(inst, cert, args.tol)

    report = RunReport(
        command=["verify"] + _command(args),
        input_digest=digest(document),
        passed=check.passed,
        verification=check.to_dict(),
        timing_s=time.perf_counter() - started,
        tolerances={"contain_tol": args.tol},
    )
    _emit(report.model_dump_json(indent=2) + "\n", args.out)
    if not check.passed:
        logger.error(f"Certificate has {len(check.violations)} violations")
    return 0 if check.passed else 1


def cmd_bench(args: argparse.Namespace) -> int:
    """Run a seeded corpus through pierce and verify, optionally probing optima."""
    started = time.perf_counter()
    if args.corpus == "default":
        corpus = CorpusConfig()
    else:
        corpus = CorpusConfig.model_validate(_read_json(args.corpus))
    seeds = _parse_seeds(args.seeds)
    configs = list(iter_corpus(corpus, seeds))
    cfg = settings.pierce_config

    if args.jobs > 1 and len(configs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(run_case, configs, [cfg] * len(configs), [args.probe] * len(configs)))
    else:
        results = [run_case(c, cfg, args.probe) for c in configs]

    summary = summarize(results)
    stats = tabulate(results)
    report = RunReport(
        command=["bench"] + _command(args),
        input_digest=digest(corpus.model_dump(mode="json")),
        passed=summary["passed"] == summary["cases"],
        result={"summary": summary, "probe": stats.to_dict(), "cases": [r.to_dict() for r in results]},
        timing_s=time.perf_counter() - started,
        tolerances=_tolerances(),
    )
    _emit(report.model_dump_json(indent=2) + "\n", args.out)

    if not results:
        print("0 cases", file=sys.stderr)
    else:
        print(
            f"{summary['passed']}/{summary['cases']} passed, max ratio {summary['max_ratio']}, "
            f"max certificate size {summary['max_cert_size']}",
            file=sys.stderr,
        )
        print(stats.table(), file=sys.stderr)
    return 0 if report.passed else 1
