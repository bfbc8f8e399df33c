"""Full verification suite for one (order, field) configuration."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .classes import ClassPartition, partition
from .cycint import embed_many, monomial
from .cyclonum import compute_all, compute_minimal, verify_identities, weighted_class_total
from .errors import CyclosumError
from .field import IndexTable
from .jacobi import (
    NORM_RTOL,
    RECOVERY_TOL,
    expression_transversal_check,
    full_matrix_grid,
    jacobi_theorem,
    minimal_row,
    oracle_grid,
    recover_grid,
)
from .params import OrderSpec


@dataclass
class SuiteReport:
    checks: dict[str, bool] = field(default_factory=dict)
    details: dict[str, object] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def record(self, name: str, passed: bool, detail=None) -> None:
        self.checks[name] = bool(passed)
        if detail is not None:
            self.details[name] = detail

    def to_dict(self) -> dict:
        return {"ok": self.ok, "checks": self.checks, "details": self.details}


def _first_mismatch(x: np.ndarray, y: np.ndarray):
    bad = np.argwhere((x != y).reshape(x.shape[0], -1, x.shape[-1]).any(axis=-1))
    return None if bad.size == 0 else [int(v) for v in bad[0]]


def norm_deviation(grid: np.ndarray, spec: OrderSpec) -> float:
    """Largest | |J(i,j)|^2 - q | over nontrivial (i, j) and every coprime embedding."""
    e = spec.e
    i, j = np.meshgrid(np.arange(e), np.arange(e), indexing="ij")
    mask = (i % e != 0) & (j % e != 0) & ((i + j) % e != 0)
    worst = 0.0
    for m in range(1, e):
        if gcd(m, e) != 1:
            continue
        z = embed_many(grid[mask], e, m)
        worst = max(worst, float(np.abs(np.abs(z) ** 2 - spec.q).max()))
    return worst


def run_suite(
    spec: OrderSpec, table: IndexTable, part: ClassPartition | None = None
) -> SuiteReport:
    e, q = spec.e, spec.q
    part = partition(spec) if part is None else part
    rep = SuiteReport()

    m = compute_all(spec, table)
    ident = verify_identities(m, part)
    rep.record("total_is_q_minus_2", ident.total_ok)
    rep.record("row_sums", ident.row_sums_ok)
    rep.record("class_constancy", ident.class_constancy_ok, ident.failures or None)

    try:
        mins = compute_minimal(spec, table, part)
    except CyclosumError as exc:
        rep.record("minimal_tallies_agree", False, str(exc))
        return rep
    rep.record("minimal_tallies_agree", True)
    rep.record("minimal_expands_to_full", bool((mins.expand(part) == m.values).all()))
    rep.record("weighted_class_total", weighted_class_total(mins, part) == q - 2)

    tr = expression_transversal_check(spec, part)
    rep.record("expression_transversal", tr.ok, tr.to_dict())

    oracle = oracle_grid(spec, table)
    full = full_matrix_grid(m)
    rep.record("oracle_eq_full_matrix", bool((oracle == full).all()), _first_mismatch(oracle, full))
    minimal = minimal_row(spec, mins, part)
    rep.record(
        "oracle_eq_minimal",
        bool((oracle[1] == minimal).all()),
        _first_mismatch(oracle[1][None], minimal[None]),
    )
    theorem = np.array([jacobi_theorem(n, spec, mins, part).value.coeffs for n in range(e)])
    rep.record("theorem_eq_minimal", bool((theorem == minimal).all()))

    # J(0, 0) = q - 2, J(0, j) = -1 and J(i, 0) = -chi^i(-1)
    ind_minus_one = table.ind(table.minus_one)
    special = (oracle[0, 0] == np.array(monomial(q - 2, 0, e).coeffs)).all()
    special = special and (oracle[0, 1:] == np.array(monomial(-1, 0, e).coeffs)).all()
    special = special and all(
        (oracle[i, 0] == np.array(monomial(-1, i * ind_minus_one, e).coeffs)).all()
        for i in range(1, e)
    )
    rep.record("trivial_character_values", bool(special))

    try:
        recovered, residual = recover_grid(oracle, spec)
        rep.record(
            "inversion_round_trip",
            bool((recovered == m.values).all()) and residual < RECOVERY_TOL,
            {"max_residual": residual},
        )
    except CyclosumError as exc:
        rep.record("inversion_round_trip", False, str(exc))

    dev = norm_deviation(oracle, spec)
    rep.record("norm_equals_q", dev <= NORM_RTOL * q, {"max_deviation": dev})
    return rep
