"""Cyclotomic numbers (a, b)_e over F_q by direct enumeration."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .classes import ClassPartition, Pair, partition
from .errors import AgreementFailure, PartitionMismatch, SpecTableMismatch
from .field import FieldElement, FieldSpec, IndexTable, succ_codes
from .params import OrderSpec

N_A_RULE = "n_a = 1 iff a == ind(-1) mod e: a = 0 when 2|k or q = 2^r, a = e/2 otherwise"


@dataclass(frozen=True, eq=False)
class CycNumMatrix:
    order_spec: OrderSpec
    values: np.ndarray = field(repr=False)
    generator: FieldElement | None = None
    field_spec: FieldSpec | None = None
    n_a_rule: str = N_A_RULE

    def __getitem__(self, ab: Pair) -> int:
        return int(self.values[ab])


@dataclass(frozen=True, eq=False)
class MinimalCycNums:
    order_spec: OrderSpec
    by_rep: dict[Pair, int]

    def expand(self, part: ClassPartition) -> np.ndarray:
        """Full e x e grid implied by the class values."""
        e = self.order_spec.e
        flat = np.zeros(e * e, dtype=np.int64)
        for cls in part.classes:
            v = self.by_rep[cls.rep]
            for a, b in cls.members:
                flat[a * e + b] = v
        return flat.reshape(e, e)


def n_a(a: int, spec: OrderSpec) -> int:
    """Correction term in the row sum: 1 exactly when a == ind(-1) mod e."""
    if spec.k % 2 == 0 or spec.q % 2 == 0:
        return int(a == 0)
    return int(2 * a == spec.e)


def _check_table(spec: OrderSpec, table: IndexTable) -> None:
    if spec.q != table.field.q:
        raise SpecTableMismatch(f"spec has q={spec.q}, table has q={table.field.q}")


def _admissible_codes(table: IndexTable) -> np.ndarray:
    """Encodings of v in F_q minus {0, -1}."""
    codes = np.arange(1, table.field.q, dtype=np.int64)
    return codes[codes != table.minus_one]


def index_pairs(spec: OrderSpec, table: IndexTable) -> tuple[np.ndarray, np.ndarray]:
    """(ind v mod e, ind(v+1) mod e) for every admissible v, in encoding order."""
    _check_table(spec, table)
    v = _admissible_codes(table)
    return table.log_of[v] % spec.e, table.log_of[succ_codes(v, table.field)] % spec.e


def _cell_counts(cells: np.ndarray, size: int, workers: int) -> np.ndarray:
    if workers <= 1 or len(cells) < 2 * workers:
        return np.bincount(cells, minlength=size)
    chunks = np.array_split(cells, workers)
    with ThreadPoolExecutor(workers) as ex:
        parts = list(ex.map(lambda c: np.bincount(c, minlength=size), chunks))
    return np.sum(parts, axis=0)


def compute_all(spec: OrderSpec, table: IndexTable, workers: int = 1) -> CycNumMatrix:
    e = spec.e
    a, b = index_pairs(spec, table)
    counts = _cell_counts(a * e + b, e * e, workers).astype(np.int64).reshape(e, e)
    counts.setflags(write=False)
    return CycNumMatrix(spec, counts, table.generator, table.field)


def compute_minimal(
    spec: OrderSpec, table: IndexTable, part: ClassPartition, workers: int = 1
) -> MinimalCycNums:
    """One value per class.

    Two tallies are kept: hits landing exactly on a representative cell, and
    hits pooled over the whole class divided by the class size. They agree
    whenever the symmetries hold, and disagreement is raised.
    """
    if part.order_spec != spec:
        raise PartitionMismatch("partition was built for a different order spec")
    e = spec.e
    a, b = index_pairs(spec, table)
    cells = a * e + b
    at_rep = _cell_counts(cells[part.rep_index[cells] == cells], e * e, workers)
    pooled = _cell_counts(part.rep_index[cells], e * e, workers)
    by_rep = {}
    for cls in part.classes:
        r = cls.rep[0] * e + cls.rep[1]
        direct = int(at_rep[r])
        if int(pooled[r]) != direct * cls.size:
            raise AgreementFailure(
                f"class {cls.rep}: pooled {int(pooled[r])} != {cls.size} x {direct}"
            )
        by_rep[cls.rep] = direct
    return MinimalCycNums(spec, by_rep)


def weighted_class_total(mins: MinimalCycNums, part: ClassPartition) -> int:
    """sum over classes of size * value; equals q - 2."""
    return sum(c.size * mins.by_rep[c.rep] for c in part.classes)


@dataclass
class IdentityReport:
    total_ok: bool
    row_sums_ok: bool
    class_constancy_ok: bool
    total: int
    failures: list[str]

    @property
    def ok(self) -> bool:
        return self.total_ok and self.row_sums_ok and self.class_constancy_ok

    def to_dict(self) -> dict:
        return {
            "total_ok": self.total_ok,
            "row_sums_ok": self.row_sums_ok,
            "class_constancy_ok": self.class_constancy_ok,
            "total": self.total,
            "failures": self.failures,
        }


def verify_identities(m: CycNumMatrix, part: ClassPartition | None = None) -> IdentityReport:
    spec = m.order_spec
    part = partition(spec) if part is None else part
    vals = m.values
    failures = []

    total = int(vals.sum())
    total_ok = total == spec.q - 2
    if not total_ok:
        failures.append(f"sum of all cells = {total}, expected {spec.q - 2}")

    row_sums_ok = True
    for a, s in enumerate(vals.sum(axis=1).tolist()):
        want = spec.k - n_a(a, spec)
        if s != want:
            row_sums_ok = False
            failures.append(f"row {a} sums to {s}, expected {want}")
            break

    class_constancy_ok = True
    for cls in part.classes:
        v0 = int(vals[cls.rep])
        bad = next((ab for ab in cls.members if int(vals[ab]) != v0), None)
        if bad is not None:
            class_constancy_ok = False
            failures.append(f"{bad} = {int(vals[bad])} differs from {cls.rep} = {v0}")
            break

    return IdentityReport(total_ok, row_sums_ok, class_constancy_ok, total, failures)
