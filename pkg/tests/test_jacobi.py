import cmath
from dataclasses import replace

import numpy as np
import pytest

from conftest import setup
from cyclosum.cycint import CycInt, monomial
from cyclosum.errors import OutOfRange, PartitionMismatch, ResidualTooLarge, TrivialCharacter
from cyclosum.jacobi import (
    JacobiResult,
    Method,
    expression_transversal_check,
    full_matrix_grid,
    jacobi_from_full_matrix,
    jacobi_minimal,
    jacobi_oracle,
    jacobi_theorem,
    minimal_row,
    norm_check,
    oracle_grid,
    recover_cyclotomic,
    recover_grid,
    theorem_index_set,
)
from cyclosum.params import Parity

SMALL = [(3, "l2", 19), (3, "2l2", 19), (3, "2l2", 37), (3, "l2", 64)]
SMALL_IDS = [f"l{l}-{v}-q{q}" for l, v, q in SMALL]


def complex_character_sum(i, j, table, e):
    """Float evaluation of sum chi^i(v) chi^j(v+1), independent of Z[zeta] reduction."""
    f = table.field
    total = 0j
    for v in range(1, f.q):
        if v == table.minus_one:
            continue
        w = v - v % f.p + (v % f.p + 1) % f.p
        total += cmath.exp(2j * cmath.pi * (i * table.log_of[v] + j * table.log_of[w]) / e)
    return total


def embed(coeffs, e):
    return sum(c * cmath.exp(2j * cmath.pi * t / e) for t, c in enumerate(coeffs))


@pytest.mark.parametrize("l,variant,q", SMALL, ids=SMALL_IDS)
def test_oracle_matches_float_character_sum(l, variant, q):
    _, table, spec, *_ = setup(l, variant, q)
    grid = oracle_grid(spec, table)
    for i in range(spec.e):
        for j in range(spec.e):
            assert abs(embed(grid[i, j], spec.e) - complex_character_sum(i, j, table, spec.e)) < 1e-8


@pytest.mark.parametrize("l,variant,q", SMALL, ids=SMALL_IDS)
def test_scalar_routes_match_vectorized(l, variant, q):
    _, table, spec, part, m, mins = setup(l, variant, q)
    grid = oracle_grid(spec, table)
    for i, j in [(0, 0), (1, 1), (2, 5), (spec.e - 1, 3), (1, spec.e - 1)]:
        o = jacobi_oracle(i, j, spec, table)
        assert o.method is Method.ORACLE
        assert o.value.coeffs == tuple(grid[i, j])
        assert jacobi_from_full_matrix(i, j, m).value == o.value
    for n in range(spec.e):
        assert jacobi_minimal(n, spec, mins, part).value == jacobi_oracle(1, n, spec, table).value


def test_trivial_character_examples_e9_q19():
    _, table, spec, *_ = setup(3, "l2", 19)
    assert jacobi_oracle(0, 0, spec, table).value == CycInt.constant(17, 9)
    for t in range(1, 9):
        assert jacobi_oracle(0, t, spec, table).value == CycInt.constant(-1, 9)
        assert jacobi_oracle(t, 0, spec, table).value == CycInt.constant(-1, 9)


def test_j_i_0_is_minus_chi_of_minus_one_in_odd_case():
    _, table, spec, *_ = setup(3, "2l2", 19)
    assert spec.parity_case is Parity.ODD
    for i in range(1, spec.e):
        expected = CycInt.constant(-1 if i % 2 == 0 else 1, spec.e)
        assert jacobi_oracle(i, 0, spec, table).value == expected


@pytest.mark.parametrize("l,variant,q", SMALL, ids=SMALL_IDS)
def test_full_matrix_equals_oracle_everywhere(l, variant, q):
    _, table, spec, _, m, _ = setup(l, variant, q)
    assert np.array_equal(full_matrix_grid(m), oracle_grid(spec, table))
    assert jacobi_from_full_matrix(0, 0, m).value == CycInt.constant(q - 2, spec.e)


@pytest.mark.parametrize("l,variant,q", SMALL + [(5, "2l2", 151)], ids=SMALL_IDS + ["l5-2l2-q151"])
def test_minimal_and_theorem_equal_oracle(l, variant, q):
    _, table, spec, part, _, mins = setup(l, variant, q)
    row = oracle_grid(spec, table)[1]
    assert np.array_equal(minimal_row(spec, mins, part), row)
    for n in range(spec.e):
        t = jacobi_theorem(n, spec, mins, part)
        assert t.method is Method.THEOREM
        assert t.value.coeffs == tuple(row[n])


def test_minimal_n0_e9_q19():
    _, _, spec, part, _, mins = setup(3, "l2", 19)
    assert jacobi_minimal(0, spec, mins, part).value == CycInt.constant(-1, 9)


def test_minimal_input_checks():
    _, _, spec, part, _, mins = setup(3, "l2", 19)
    with pytest.raises(OutOfRange):
        jacobi_minimal(9, spec, mins, part)
    other = setup(3, "l2", 37)
    with pytest.raises(PartitionMismatch):
        jacobi_minimal(1, spec, other[5], part)


def test_theorem_index_set_matches_printed_rows_e18():
    even = theorem_index_set(setup(3, "2l2", 37)[2])
    rows = {a: sorted(b for (x, b) in even if x == a and even[(x, b)] == "six") for a in range(6)}
    assert rows[1] == list(range(2, 17)) and rows[5] == [10, 11, 12]
    assert even[(6, 12)] == "two" and even[(0, 0)] == "single"
    odd = theorem_index_set(setup(3, "2l2", 19)[2])
    rows = {a: sorted(b for (x, b) in odd if x == a and odd[(x, b)] == "six") for a in range(6)}
    assert rows[1] == list(range(0, 9)) + list(range(12, 18))
    assert rows[3] == list(range(0, 7)) + [16, 17]
    assert rows[4] == list(range(0, 6))
    assert rows[5] == [1, 2, 3]
    assert odd[(6, 3)] == "two" and odd[(0, 9)] == "single"


@pytest.mark.parametrize(
    "l,variant,q,count",
    [(3, "2l2", 37, 64), (3, "2l2", 19, 64), (3, "l2", 19, 19), (5, "l2", 101, 117),
     (5, "2l2", 101, 442), (5, "2l2", 151, 442)],
)
def test_transversal_examples(l, variant, q, count):
    _, _, spec, part, *_ = setup(l, variant, q)
    rep = expression_transversal_check(spec, part)
    assert rep.is_transversal and rep.n_pairs == count
    assert rep.cardinalities_equal


def test_transversal_detects_wrong_partition():
    _, _, spec, part, *_ = setup(3, "2l2", 19)
    even_spec = replace(spec, parity_case=Parity.EVEN_OR_CHAR2)
    with pytest.raises(PartitionMismatch):
        expression_transversal_check(even_spec, part)


@pytest.mark.parametrize("l,variant,q", [(3, "l2", 19), (3, "2l2", 19)], ids=["e9", "e18"])
def test_recovery(l, variant, q):
    _, table, spec, _, m, _ = setup(l, variant, q)
    grid = oracle_grid(spec, table)
    value, residual = recover_cyclotomic(0, 0, grid, spec)
    assert value == int(m.values[0, 0]) and residual < 1e-6
    for a, b in [(1, 2), (spec.e - 1, 3), (4, 4)]:
        assert recover_cyclotomic(a, b, grid, spec)[0] == int(m.values[a, b])
    rec, res = recover_grid(grid, spec)
    assert np.array_equal(rec, m.values) and res < 1e-6
    as_objects = [[CycInt.from_array(grid[i, j], spec.e) for j in range(spec.e)] for i in range(spec.e)]
    assert recover_cyclotomic(1, 2, as_objects, spec)[0] == int(m.values[1, 2])


def test_recovery_rejects_corrupted_grid():
    _, table, spec, *_ = setup(3, "l2", 19)
    grid = oracle_grid(spec, table).copy()
    grid[2, 3, 1] += 1
    with pytest.raises(ResidualTooLarge):
        recover_cyclotomic(0, 0, grid, spec)


def test_norm_examples():
    _, table, spec, *_ = setup(3, "l2", 19)
    rep = norm_check(jacobi_oracle(1, 1, spec, table))
    assert rep.ok and abs(rep.norm_sq - 19) < 1e-9
    with pytest.raises(TrivialCharacter):
        norm_check(jacobi_oracle(0, 1, spec, table))
    _, table, spec, *_ = setup(5, "l2", 101)
    res = jacobi_oracle(1, 2, spec, table)
    for m in (1, 2, 3, 7, 24):
        assert norm_check(res, m).ok


def test_result_json():
    _, table, spec, *_ = setup(3, "l2", 19)
    r = jacobi_oracle(1, 2, spec, table)
    obj = r.to_json()
    assert obj["method"] == "ORACLE" and obj["value"]["e"] == 9
    assert r.metadata["q"] == 19 and r.metadata["generator"] == [2]
    assert isinstance(r, JacobiResult)
    assert CycInt.from_json(obj["value"]) == r.value
