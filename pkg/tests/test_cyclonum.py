import numpy as np
import pytest

from conftest import setup
from cyclosum.cyclonum import (
    CycNumMatrix,
    compute_all,
    compute_minimal,
    n_a,
    verify_identities,
    weighted_class_total,
)
from cyclosum.errors import PartitionMismatch, SpecTableMismatch
from cyclosum.field import add, build_index_table, element, field_for_q, find_generator, mul, neg, one
from cyclosum.params import make_order_spec

CONFIGS = [
    (3, "l2", 19), (3, "l2", 37), (3, "l2", 64), (3, "l2", 73), (5, "l2", 101),
    (5, "l2", 151), (7, "l2", 197), (3, "2l2", 19), (3, "2l2", 37), (3, "2l2", 109),
    (5, "2l2", 101), (5, "2l2", 151), (7, "2l2", 197),
]
IDS = [f"l{l}-{v}-q{q}" for l, v, q in CONFIGS]


def brute_cyclotomic_numbers(l, variant, q):
    """Enumerate with scalar field arithmetic and a dict-based discrete log."""
    f = field_for_q(q)
    spec = make_order_spec(l, variant, f)
    g = find_generator(f)
    ind, x = {}, one(f)
    for i in range(q - 1):
        ind[x] = i
        x = mul(x, g, f)
    minus_one = neg(one(f), f)
    grid = np.zeros((spec.e, spec.e), dtype=np.int64)
    for v in ind:
        if v == minus_one:
            continue
        grid[ind[v] % spec.e, ind[add(v, one(f), f)] % spec.e] += 1
    return grid


@pytest.mark.parametrize("l,variant,q", CONFIGS, ids=IDS)
def test_enumeration_matches_scalar_oracle(l, variant, q):
    m = setup(l, variant, q)[4]
    assert np.array_equal(m.values, brute_cyclotomic_numbers(l, variant, q))


def test_examples_e9_q19():
    _, table, spec, part, m, mins = setup(3, "l2", 19)
    assert table.generator == element(2, table.field)
    assert m[(0, 0)] == 0
    assert int(m.values[0].sum()) == 1 == spec.k - n_a(0, spec)
    assert len(mins.by_rep) == 19
    assert mins.by_rep[(0, 0)] == 0


def test_minimal_e18_q19_has_64_entries():
    assert len(setup(3, "2l2", 19)[5].by_rep) == 64


@pytest.mark.parametrize("l,variant,q", CONFIGS, ids=IDS)
def test_identities(l, variant, q):
    _, _, spec, part, m, mins = setup(l, variant, q)
    rep = verify_identities(m, part)
    assert rep.ok, rep.failures
    assert rep.total == q - 2
    assert weighted_class_total(mins, part) == q - 2
    assert set(mins.by_rep) == set(part.reps)
    assert np.array_equal(mins.expand(part), m.values)


def test_row_correction_sits_at_index_of_minus_one():
    # q = 64: -1 = 1, so the excluded v lands in row 0 although k = 7 is odd
    for args in [(3, "l2", 64), (3, "2l2", 19), (5, "2l2", 151), (3, "l2", 37)]:
        _, table, spec, _, m, _ = setup(*args)
        hole = table.ind(table.minus_one) % spec.e
        for a in range(spec.e):
            assert n_a(a, spec) == int(a == hole)
            assert int(m.values[a].sum()) == spec.k - int(a == hole)


def test_perturbed_matrix_fails_total():
    _, _, spec, part, m, _ = setup(3, "l2", 19)
    bumped = m.values.copy()
    bumped[2, 5] += 1
    rep = verify_identities(CycNumMatrix(spec, bumped), part)
    assert not rep.total_ok and rep.total == 18
    assert not rep.ok and rep.failures


def test_class_constancy_detects_broken_symmetry():
    _, _, spec, part, m, _ = setup(3, "2l2", 37)
    vals = m.values.copy()
    a, b = next(ab for c in part.classes if c.size == 6 for ab in c.members[1:2])
    vals[a, b] += 1
    vals[0, 1] -= 1
    rep = verify_identities(CycNumMatrix(spec, vals), part)
    assert not rep.class_constancy_ok


def test_odd_case_constancy_uses_shifted_maps():
    _, _, spec, part, m, _ = setup(3, "2l2", 19)
    assert spec.parity_case.value == "ODD"
    assert verify_identities(m, part).class_constancy_ok
    # the even-case swap (a, b) -> (b, a) does not hold here
    assert not np.array_equal(m.values, m.values.T)


@pytest.mark.parametrize("workers", [2, 3, 8])
def test_parallel_enumeration_is_bit_identical(workers):
    _, table, spec, part, m, mins = setup(7, "2l2", 197)
    assert np.array_equal(compute_all(spec, table, workers=workers).values, m.values)
    assert compute_minimal(spec, table, part, workers=workers).by_rep == mins.by_rep


def test_mismatches():
    _, table19, spec19, part19, _, _ = setup(3, "l2", 19)
    spec37 = make_order_spec(3, "l2", 37)
    with pytest.raises(SpecTableMismatch):
        compute_all(spec37, table19)
    with pytest.raises(PartitionMismatch):
        compute_minimal(spec37, build_index_table(field_for_q(37)), part19)
