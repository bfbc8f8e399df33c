"""Jacobi sums J_e(i, j) of orders l^2 and 2l^2.

Four routes are available:

* ``ORACLE``       sum of chi^i(v) chi^j(v+1) over the field;
* ``FULL_MATRIX``  sum_{a,b} (a,b) zeta^(ai+bj) over every cyclotomic number;
* ``MINIMAL``      J(1, n) from one cyclotomic number per symmetry class,
                   each class contributing its value times the sum of
                   zeta^(a+bn) over its members;
* ``THEOREM``      J(1, n) written out term by term over the explicit index
                   ranges (the closed-form expressions), which must agree
                   with ``MINIMAL`` whenever those ranges are a transversal.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace

import numpy as np

from .classes import ClassPartition, Pair
from .cycint import (
    CycInt,
    embed_complex,
    embed_many,
    from_exponent_counts,
    monomial,
    reduction_matrix,
)
from .cyclonum import CycNumMatrix, MinimalCycNums, index_pairs
from .errors import OutOfRange, PartitionMismatch, ResidualTooLarge, TrivialCharacter
from .field import IndexTable
from .params import OrderSpec, Parity, Variant

RECOVERY_TOL = 1e-6
NORM_RTOL = 1e-6


class Method(str, enum.Enum):
    ORACLE = "ORACLE"
    FULL_MATRIX = "FULL_MATRIX"
    MINIMAL = "MINIMAL"
    THEOREM = "THEOREM"


@dataclass(frozen=True)
class JacobiResult:
    order_spec: OrderSpec
    i: int
    j: int
    value: CycInt
    method: Method
    metadata: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {
            "i": self.i,
            "j": self.j,
            "method": self.method.value,
            "value": self.value.to_json(),
        }


def table_metadata(table: IndexTable | None) -> dict:
    if table is None:
        return {}
    return {**table.field.to_dict(), "generator": list(table.generator.coeffs)}


def _check_index(x: int, e: int, name: str) -> None:
    if not 0 <= x < e:
        raise OutOfRange(f"{name}={x} outside [0, {e})")


def _rows_to_coeffs(exps: np.ndarray, e: int, weights: np.ndarray | None = None) -> np.ndarray:
    """Reduce rows of exponents (shape (R, N)) to canonical coefficients (R, phi)."""
    rows = exps.shape[0]
    flat = (exps + (np.arange(rows, dtype=np.int64) * e)[:, None]).ravel()
    w = None if weights is None else np.broadcast_to(weights, exps.shape).ravel()
    counts = np.bincount(flat, weights=w, minlength=rows * e).reshape(rows, e)
    if weights is not None:
        counts = np.rint(counts).astype(np.int64)
    return counts.astype(np.int64) @ reduction_matrix(e)


# -- oracle ---------------------------------------------------------------

def jacobi_oracle(i: int, j: int, spec: OrderSpec, table: IndexTable) -> JacobiResult:
    """Direct character sum, accumulated term by term (v = 0, -1 contribute 0)."""
    e = spec.e
    _check_index(i, e, "i")
    _check_index(j, e, "j")
    a, b = index_pairs(spec, table)
    total = CycInt.zero(e)
    for x, y in zip(a.tolist(), b.tolist()):
        total = total + monomial(1, i * x + j * y, e)
    return JacobiResult(spec, i, j, total, Method.ORACLE, table_metadata(table))


def oracle_grid(spec: OrderSpec, table: IndexTable) -> np.ndarray:
    """Coefficients of J(i, j) for all i, j; shape (e, e, phi)."""
    e = spec.e
    a, b = index_pairs(spec, table)
    js = np.arange(e, dtype=np.int64)[:, None]
    out = np.empty((e, e, spec.phi), dtype=np.int64)
    for i in range(e):
        out[i] = _rows_to_coeffs((i * a[None, :] + js * b[None, :]) % e, e)
    return out


def oracle_row(spec: OrderSpec, table: IndexTable) -> np.ndarray:
    """Coefficients of J(1, n) for all n; shape (e, phi)."""
    e = spec.e
    a, b = index_pairs(spec, table)
    ns = np.arange(e, dtype=np.int64)[:, None]
    return _rows_to_coeffs((a[None, :] + ns * b[None, :]) % e, e)


# -- full cyclotomic matrix -------------------------------------------------

def _nonzero_cells(m: CycNumMatrix) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    a, b = np.nonzero(m.values)
    return a.astype(np.int64), b.astype(np.int64), m.values[a, b].astype(np.int64)


def jacobi_from_full_matrix(i: int, j: int, m: CycNumMatrix) -> JacobiResult:
    e = m.order_spec.e
    _check_index(i, e, "i")
    _check_index(j, e, "j")
    a, b, w = _nonzero_cells(m)
    coeffs = _rows_to_coeffs(((a * i + b * j) % e)[None, :], e, w[None, :])[0]
    return JacobiResult(m.order_spec, i, j, CycInt.from_array(coeffs, e), Method.FULL_MATRIX)


def full_matrix_grid(m: CycNumMatrix) -> np.ndarray:
    """Coefficients of J(i, j) from the full matrix; shape (e, e, phi).

    Cells holding zero contribute nothing, so only nonzero cells are summed.
    """
    e = m.order_spec.e
    a, b, w = _nonzero_cells(m)
    js = np.arange(e, dtype=np.int64)[:, None]
    out = np.empty((e, e, m.order_spec.phi), dtype=np.int64)
    for i in range(e):
        out[i] = _rows_to_coeffs((i * a[None, :] + js * b[None, :]) % e, e, w[None, :])
    return out


def full_matrix_row(m: CycNumMatrix) -> np.ndarray:
    """Coefficients of J(1, n) for all n from the full matrix; shape (e, phi)."""
    e = m.order_spec.e
    a, b, w = _nonzero_cells(m)
    ns = np.arange(e, dtype=np.int64)[:, None]
    return _rows_to_coeffs((a[None, :] + ns * b[None, :]) % e, e, w[None, :])


# -- minimal-class evaluator -------------------------------------------------

def _check_minimal_inputs(spec: OrderSpec, mins: MinimalCycNums, part: ClassPartition) -> None:
    if part.order_spec != spec or mins.order_spec != spec:
        raise PartitionMismatch("order spec differs between spec, partition and class values")
    if set(mins.by_rep) != set(part.reps):
        raise PartitionMismatch("class values are not keyed by the partition's representatives")


def _class_weights(spec: OrderSpec, mins: MinimalCycNums, part: ClassPartition) -> np.ndarray:
    """Per-cell weight: the value of the cell's class (read at its representative)."""
    e = spec.e
    rep_value = np.zeros(e * e, dtype=np.int64)
    for (a, b), v in mins.by_rep.items():
        rep_value[a * e + b] = v
    return rep_value[part.rep_index]


def minimal_row(spec: OrderSpec, mins: MinimalCycNums, part: ClassPartition) -> np.ndarray:
    """Coefficients of J(1, n) for all n from class values; shape (e, phi)."""
    _check_minimal_inputs(spec, mins, part)
    e = spec.e
    w = _class_weights(spec, mins, part)
    keep = np.flatnonzero(w)
    a, b, w = keep // e, keep % e, w[keep]
    ns = np.arange(e, dtype=np.int64)[:, None]
    return _rows_to_coeffs((a[None, :] + ns * b[None, :]) % e, e, w[None, :])


def jacobi_minimal(
    n: int, spec: OrderSpec, mins: MinimalCycNums, part: ClassPartition
) -> JacobiResult:
    """J(1, n) = sum over classes C of value(C) * sum_{(a,b) in C} zeta^(a + b n)."""
    _check_minimal_inputs(spec, mins, part)
    e = spec.e
    _check_index(n, e, "n")
    total = CycInt.zero(e)
    for cls in part.classes:
        c = mins.by_rep[cls.rep]
        if not c:
            continue
        counts = np.zeros(e, dtype=np.int64)
        for a, b in cls.members:
            counts[(a + b * n) % e] += 1
        total = total + c * from_exponent_counts(counts, e)
    return JacobiResult(spec, 1, n, total, Method.MINIMAL)


# -- explicit index ranges of the closed-form expressions ---------------------

def theorem_index_set(spec: OrderSpec) -> dict[Pair, str]:
    """Index pairs named by the closed-form expression for J(1, n), with their role.

    Roles: ``"single"``, ``"two"`` (the l = 3 two-element class),
    ``"row0"`` (three-term classes) and ``"six"``.
    """
    e, l = spec.e, spec.l
    out: dict[Pair, str] = {}
    if spec.parity_case is Parity.EVEN_OR_CHAR2:
        out[(0, 0)] = "single"
        if l == 3:
            out[(e // 3, 2 * e // 3)] = "two"
        for b in range(1, e):
            out[(0, b)] = "row0"
        for a in range(1, (e - 1) // 3 + 1):
            for b in range(2 * a, e - a):
                out[(a, b)] = "six"
        return out

    s = spec.half
    out[(0, s)] = "single"
    if l == 3:
        out[(2 * s // 3, s // 3)] = "two"
    for b in range(e):
        if b != s:
            out[(0, b)] = "row0"
    for a in range(1, (s - 1) // 2 + 1):
        for b in list(range(0, s - a + 1)) + list(range(s + 1 + 2 * a, e)):
            out[(a, b)] = "six"
    j = 0
    while 2 * j + 1 <= (s - 3) // 2 - j:
        a = (s + 1) // 2 + j
        for b in range(2 * j + 1, (s - 3) // 2 - j + 1):
            out[(a, b)] = "six"
        j += 1
    return out


def _theorem_exponents(a: int, b: int, n: int, role: str, spec: OrderSpec) -> list[int]:
    if spec.parity_case is Parity.EVEN_OR_CHAR2:
        if role == "single":
            return [0]
        if role == "two":
            return [a + b * n, b + a * n]
        if role == "row0":
            return [b * n, b, -b * (n + 1)]
        return [
            a * n + b,
            a + b * n,
            a - b * (n + 1),
            a * n - b * (n + 1),
            b * n - a * (n + 1),
            b - a * (n + 1),
        ]
    s = spec.half
    if role == "single":
        return [s * n]
    if role == "two":
        return [a + b * n, (b + s) + (a + s) * n]
    if role == "row0":
        return [b * n, s * (n + 1) + b, s - b * (n + 1)]
    return [
        a + b * n,
        a * n + b + s * (n + 1),
        s + a - b * (n + 1),
        s * (n + 1) + b - a * (n + 1),
        b * n - a * (n + 1),
        s + a * n - b * (n + 1),
    ]


def jacobi_theorem(
    n: int, spec: OrderSpec, mins: MinimalCycNums, part: ClassPartition
) -> JacobiResult:
    """J(1, n) evaluated term by term from the closed-form expression."""
    _check_minimal_inputs(spec, mins, part)
    e = spec.e
    _check_index(n, e, "n")
    counts = np.zeros(e, dtype=np.int64)
    for (a, b), role in theorem_index_set(spec).items():
        c = mins.by_rep[part.rep_of(a, b)]
        for d in _theorem_exponents(a, b, n, role, spec):
            counts[d % e] += c
    return JacobiResult(spec, 1, n, from_exponent_counts(counts, e), Method.THEOREM)


@dataclass
class TransversalReport:
    order_spec: OrderSpec
    n_pairs: int
    n_classes: int
    duplicates: list[Pair]
    missing: list[Pair]
    other_parity_pairs: int | None

    @property
    def is_transversal(self) -> bool:
        return not self.duplicates and not self.missing and self.n_pairs == self.n_classes

    @property
    def cardinalities_equal(self) -> bool:
        return self.other_parity_pairs is None or self.other_parity_pairs == self.n_pairs

    @property
    def ok(self) -> bool:
        return self.is_transversal and self.cardinalities_equal

    def to_dict(self) -> dict:
        return {
            "n_pairs": self.n_pairs,
            "n_classes": self.n_classes,
            "is_transversal": self.is_transversal,
            "duplicates": [list(p) for p in self.duplicates],
            "missing": [list(p) for p in self.missing],
            "other_parity_pairs": self.other_parity_pairs,
            "cardinalities_equal": self.cardinalities_equal,
        }


def expression_transversal_check(spec: OrderSpec, part: ClassPartition) -> TransversalReport:
    """Check the expression's index pairs hit every class exactly once.

    For order 2l^2 the other parity case's index set is counted too; both
    must have the same size.
    """
    if part.order_spec != spec:
        raise PartitionMismatch("partition was built for a different order spec")
    pairs = theorem_index_set(spec)
    seen: dict[Pair, Pair] = {}
    duplicates = []
    for ab in pairs:
        rep = part.rep_of(*ab)
        if rep in seen:
            duplicates.append(ab)
        else:
            seen[rep] = ab
    missing = [r for r in part.reps if r not in seen]
    other = None
    if spec.variant is Variant.TWO_L2:
        flipped = Parity.ODD if spec.parity_case is Parity.EVEN_OR_CHAR2 else Parity.EVEN_OR_CHAR2
        other = len(theorem_index_set(replace(spec, parity_case=flipped)))
    return TransversalReport(spec, len(pairs), len(part), duplicates, missing, other)


# -- inversion and norm ------------------------------------------------------

def _as_coeff_grid(all_jacobi) -> np.ndarray:
    if isinstance(all_jacobi, np.ndarray):
        return all_jacobi
    return np.array([[x.coeffs for x in row] for row in all_jacobi], dtype=np.int64)


def recover_cyclotomic(a: int, b: int, all_jacobi, spec: OrderSpec) -> tuple[int, float]:
    """Invert the Jacobi grid at one cell: e^2 (a, b) = sum_{i,j} zeta^-(ai+bj) J(i, j).

    Returns the rounded count and the residual after division by e^2.
    """
    e = spec.e
    _check_index(a, e, "a")
    _check_index(b, e, "b")
    J = embed_many(_as_coeff_grid(all_jacobi), e, 1)
    idx = np.arange(e)
    phase = np.exp(-2j * np.pi * ((a * idx)[:, None] + (b * idx)[None, :]) / e)
    val = (phase * J).sum() / e**2
    rounded = int(round(val.real))
    residual = abs(val - rounded)
    if residual > RECOVERY_TOL:
        raise ResidualTooLarge(f"({a}, {b}): residual {residual:.3g}")
    return rounded, float(residual)


def recover_grid(all_jacobi, spec: OrderSpec) -> tuple[np.ndarray, float]:
    """Invert every cell at once with a 2-D DFT; returns (counts, max residual)."""
    e = spec.e
    J = embed_many(_as_coeff_grid(all_jacobi), e, 1)
    vals = np.fft.fft2(J) / e**2
    rounded = np.rint(vals.real).astype(np.int64)
    residual = float(np.abs(vals - rounded).max())
    if residual > RECOVERY_TOL:
        raise ResidualTooLarge(f"max residual {residual:.3g}")
    return rounded, residual


@dataclass
class NormReport:
    ok: bool
    norm_sq: float
    deviation: float


def norm_check(res: JacobiResult, m: int = 1) -> NormReport:
    """|J(i, j)|^2 = q for nontrivial i, j, i + j."""
    spec = res.order_spec
    e = spec.e
    if res.i % e == 0 or res.j % e == 0 or (res.i + res.j) % e == 0:
        raise TrivialCharacter(f"J({res.i}, {res.j}) involves a trivial character")
    z = embed_complex(res.value, m)
    norm_sq = abs(z) ** 2
    dev = abs(norm_sq - spec.q)
    return NormReport(dev <= NORM_RTOL * spec.q, norm_sq, dev)

