import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional

import structlog
from pydantic import BaseModel

from equicolor.errors import EquicolorError
from equicolor.io import read_edge_list
from equicolor.models.base import Document
from equicolor.models.config import SolverConfig
from equicolor.services.solver import equitable_color

logger = structlog.get_logger(__name__)

CORPUS_SUFFIXES = (".el", ".edges", ".txt")


class BenchRow(BaseModel):
    instance: str
    status: str
    n: int = 0
    m: int = 0
    runtime_ms: float = 0.0
    fix_phases: int = 0
    improvement_rounds: int = 0
    pattern_rounds: int = 0
    fallback_rounds: int = 0
    error: Optional[str] = None


class BenchReport(Document):
    rows: list[BenchRow] = []

    def table(self) -> str:
        header = f"{'instance':<28} {'status':<20} {'n':>6} {'ms':>10} {'fixes':>6} {'rounds':>6} {'fallback':>8}"
        lines = [header, "-" * len(header)]
        for row in self.rows:
            lines.append(
                f"{row.instance:<28} {row.status:<20} {row.n:>6} {row.runtime_ms:>10.1f} "
                f"{row.fix_phases:>6} {row.improvement_rounds:>6} {row.fallback_rounds:>8}"
            )
        return "\n".join(lines) + "\n"


def corpus_files(corpus: Path) -> list[Path]:
    return sorted(p for p in corpus.iterdir() if p.is_file() and p.suffix in CORPUS_SUFFIXES)


def run_instance(path: Path, cfg: SolverConfig) -> BenchRow:
    start = time.monotonic()
    try:
        g = read_edge_list(path)
        result = equitable_color(g, cfg)
    except (EquicolorError, OSError) as e:
        return BenchRow(
            instance=path.name,
            status=type(e).__name__,
            runtime_ms=(time.monotonic() - start) * 1000,
            error=str(e),
        )
    stats = result.stats
    return BenchRow(
        instance=path.name,
        status="ok",
        n=g.n,
        m=g.m,
        runtime_ms=(time.monotonic() - start) * 1000,
        fix_phases=stats.fix_phases,
        improvement_rounds=stats.improvement_rounds,
        pattern_rounds=stats.improvement_rounds - stats.fallback_rounds,
        fallback_rounds=stats.fallback_rounds,
    )


def bench(corpus: Path, cfg: SolverConfig, jobs: int = 1) -> BenchReport:
    """Solve every edge-list file in ``corpus``; failures become rows, the run continues."""
    files = corpus_files(corpus)
    if jobs > 1 and len(files) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(run_instance, files, [cfg] * len(files)))
    else:
        rows = [run_instance(path, cfg) for path in files]
    for row in rows:
        logger.info("bench.row", instance=row.instance, status=row.status, runtime_ms=round(row.runtime_ms, 1))
    return BenchReport(rows=sorted(rows, key=lambda row: row.instance))
