"""Naive full-matrix vs minimal-class evaluation of every J(1, n)."""

from __future__ import annotations

import csv
import io
import statistics
import time
from dataclasses import dataclass

import numpy as np

from .classes import ClassPartition, partition
from .cyclonum import compute_all, compute_minimal
from .errors import AgreementFailure
from .field import IndexTable
from .jacobi import full_matrix_row, minimal_row
from .params import OrderSpec


@dataclass
class BenchReport:
    order_spec: OrderSpec
    naive_count: int
    minimal_count: int
    naive_ms: float
    minimal_ms: float
    partition_ms: float
    agreement: bool
    workers: int = 1

    @property
    def reduction(self) -> int:
        return self.naive_count - self.minimal_count

    def to_dict(self) -> dict:
        return {
            **self.order_spec.to_dict(),
            "naive_count": self.naive_count,
            "minimal_count": self.minimal_count,
            "reduction": self.reduction,
            "naive_ms": round(self.naive_ms, 3),
            "minimal_ms": round(self.minimal_ms, 3),
            "partition_ms": round(self.partition_ms, 3),
            "agreement": self.agreement,
            "workers": self.workers,
        }


def _median_ms(fn, repetitions: int):
    times = []
    out = None
    for _ in range(repetitions):
        t0 = time.perf_counter()
        out = fn()
        times.append((time.perf_counter() - t0) * 1e3)
    return out, statistics.median(times)


def run_bench(
    spec: OrderSpec,
    table: IndexTable,
    repetitions: int = 3,
    workers: int = 1,
    part: ClassPartition | None = None,
) -> BenchReport:
    """Time both routes to J(1, n), n = 0..e-1, and count the cells each reads.

    The partition depends only on (l, parity case), so it is timed separately
    and excluded from the minimal route.
    """
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    if part is None:
        part, partition_ms = _median_ms(lambda: partition(spec), 1)
    else:
        partition_ms = 0.0

    def naive():
        m = compute_all(spec, table, workers=workers)
        return m.values.size, full_matrix_row(m)

    def minimal():
        mins = compute_minimal(spec, table, part, workers=workers)
        return len(mins.by_rep), minimal_row(spec, mins, part)

    (naive_count, naive_rows), naive_ms = _median_ms(naive, repetitions)
    (minimal_count, minimal_rows), minimal_ms = _median_ms(minimal, repetitions)

    diff = np.flatnonzero((naive_rows != minimal_rows).any(axis=1))
    if diff.size:
        raise AgreementFailure(f"J(1, {int(diff[0])}) differs between routes", n=int(diff[0]))
    return BenchReport(
        spec, naive_count, minimal_count, naive_ms, minimal_ms, partition_ms, True, workers
    )


COLUMNS = [
    "l", "variant", "e", "q", "k", "parity_case", "naive_count", "minimal_count",
    "reduction", "naive_ms", "minimal_ms", "partition_ms", "agreement",
]


def format_reports(reports: list[BenchReport], fmt: str = "markdown") -> str:
    rows = [r.to_dict() for r in reports]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=COLUMNS, extrasaction="ignore", lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue()
    lines = ["| " + " | ".join(COLUMNS) + " |", "|" + "---|" * len(COLUMNS)]
    for row in rows:
        lines.append("| " + " | ".join(str(row[c]) for c in COLUMNS) + " |")
    return "\n".join(lines) + "\n"
