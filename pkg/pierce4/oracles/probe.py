"""Corpus runs: certificate checks per instance and the three-point probe."""

import logging
from collections import defaultdict
from dataclasses import asdict, dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

from pierce4.config import PierceConfig
from pierce4.errors import Pierce4Error, TooLarge
from pierce4.oracles.brute import MAX_POLYS, brute_force_piercing
from pierce4.oracles.generator import CorpusConfig, GenConfig, gen_instance, iter_corpus
from pierce4.piercing import Branch, pierce, verify_certificate

logger = logging.getLogger(__name__)


@dataclass
class CaseResult:
    """One corpus instance through pierce, verify and (optionally) the oracle."""

    seed: int
    body: str
    n: int
    passed: bool = False
    branch: Optional[str] = None
    excluded_family: Optional[int] = None
    cert_size: Optional[int] = None
    ratio: Optional[float] = None
    optimum: Optional[int] = None
    probe_status: str = "not_run"
    error: Optional[str] = None

    def to_dict(self) -> dict:
        return asdict(self)


def run_case(gen_cfg: GenConfig, cfg: Optional[PierceConfig] = None, probe: bool = True) -> CaseResult:
    """Generate, pierce and verify one instance; compare with the brute-force optimum when asked."""
    cfg = cfg or PierceConfig()
    result = CaseResult(seed=gen_cfg.seed, body=gen_cfg.body.label, n=gen_cfg.n_families)
    try:
        inst = gen_instance(gen_cfg)
        cert = pierce(inst, cfg)
    except Pierce4Error as e:
        logger.error(f"Seed {gen_cfg.seed}: {type(e).__name__}: {e.message}")
        result.error = f"{type(e).__name__}: {e.message}"
        return result

    report = verify_certificate(inst, cert, cfg.contain_tol)
    result.passed = report.passed
    result.branch = cert.branch.value
    result.excluded_family = cert.excluded_family
    result.cert_size = len(cert.points)
    result.ratio = cert.approx.ratio if cert.approx else None
    if not probe:
        return result

    polys = [inst.translate(i, k) for i, k, _ in inst.translates() if i != cert.excluded_family]
    if len(polys) > MAX_POLYS:
        result.probe_status = "skipped"
        return result
    try:
        found = brute_force_piercing(polys, max(result.cert_size, 1))
    except TooLarge:
        result.probe_status = "skipped"
        return result
    if found is None:
        # The certificate itself pierces with cert_size points
        logger.warning(f"Seed {gen_cfg.seed}: oracle found no piercing set of certificate size")
        result.probe_status = "oracle_above_certificate"
    else:
        result.optimum = found[0]
        result.probe_status = "ok"
    return result


@dataclass
class ProbeRow:
    body: str
    n: int
    cases: int = 0
    probed: int = 0
    optimum_le_3: int = 0
    max_cert_size: int = 0
    below_optimum: int = 0

    @property
    def fraction_le_3(self) -> Optional[float]:
        return self.optimum_le_3 / self.probed if self.probed else None

    def to_dict(self) -> dict:
        data = asdict(self)
        data["optimum_le_3_fraction"] = self.fraction_le_3
        return data


@dataclass
class ProbeStats:
    """Per (body, n) table of how often the optimum for the chosen family is at most 3."""

    rows: List[ProbeRow] = field(default_factory=list)

    @property
    def cases(self) -> int:
        return sum(r.cases for r in self.rows)

    @property
    def below_optimum(self) -> int:
        return sum(r.below_optimum for r in self.rows)

    def to_dict(self) -> dict:
        return {"cases": self.cases, "below_optimum": self.below_optimum, "rows": [r.to_dict() for r in self.rows]}

    def table(self) -> str:
        if not self.rows:
            return "0 cases"
        lines = [f"{'body':<18} {'n':>3} {'cases':>6} {'probed':>7} {'opt<=3':>7} {'max cert':>9}"]
        for r in self.rows:
            frac = "-" if r.fraction_le_3 is None else f"{r.fraction_le_3:.3f}"
            lines.append(f"{r.body:<18} {r.n:>3} {r.cases:>6} {r.probed:>7} {frac:>7} {r.max_cert_size:>9}")
        return "\n".join(lines)


def tabulate(results: Iterable[CaseResult]) -> ProbeStats:
    rows: Dict[Tuple[str, int], ProbeRow] = {}
    for res in results:
        row = rows.setdefault((res.body, res.n), ProbeRow(res.body, res.n))
        row.cases += 1
        if res.cert_size is not None:
            row.max_cert_size = max(row.max_cert_size, res.cert_size)
        if res.probe_status == "oracle_above_certificate":
            row.below_optimum += 1
        if res.optimum is not None:
            row.probed += 1
            row.optimum_le_3 += int(res.optimum <= 3)
    return ProbeStats([rows[key] for key in sorted(rows)])


def conjecture_probe(corpus: CorpusConfig, seeds: range, cfg: Optional[PierceConfig] = None) -> ProbeStats:
    """Compare certificate sizes with brute-force optima over a seeded corpus."""
    results = [run_case(gen_cfg, cfg, probe=True) for gen_cfg in iter_corpus(corpus, seeds)]
    return tabulate(results)


def summarize(results: List[CaseResult]) -> dict:
    """Pass rates and extremes over a corpus run."""
    by_branch: Dict[str, int] = defaultdict(int)
    for res in results:
        by_branch[res.branch or "error"] += 1
    ratios = [r.ratio for r in results if r.ratio is not None]
    sizes = [r.cert_size for r in results if r.cert_size is not None]
    transversal = [r.cert_size for r in results if r.branch == Branch.TRANSVERSAL_FOUR_POINTS.value]
    return {
        "cases": len(results),
        "passed": sum(r.passed for r in results),
        "failed_seeds": [r.seed for r in results if not r.passed],
        "branches": dict(sorted(by_branch.items())),
        "max_ratio": max(ratios) if ratios else None,
        "max_cert_size": max(sizes) if sizes else None,
        "max_transversal_cert_size": max(transversal) if transversal else None,
    }
