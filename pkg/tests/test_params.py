import pytest

from cyclosum.errors import DoesNotDivide, LTooSmall, NotPrime
from cyclosum.field import field_for_q, prime_power
from cyclosum.params import Parity, Variant, enumerate_valid_q, make_order_spec


@pytest.mark.parametrize(
    "l,variant,q,e,k,parity",
    [
        (3, "l2", 19, 9, 2, Parity.EVEN_OR_CHAR2),
        (3, "2l2", 19, 18, 1, Parity.ODD),
        (3, "2l2", 37, 18, 2, Parity.EVEN_OR_CHAR2),
        (3, "l2", 64, 9, 7, Parity.EVEN_OR_CHAR2),
    ],
)
def test_make_order_spec(l, variant, q, e, k, parity):
    spec = make_order_spec(l, variant, field_for_q(q))
    assert (spec.e, spec.k, spec.parity_case) == (e, k, parity)


def test_order_spec_errors():
    f = field_for_q(19)
    with pytest.raises(NotPrime):
        make_order_spec(9, "l2", f)
    with pytest.raises(LTooSmall):
        make_order_spec(2, "l2", f)
    with pytest.raises(DoesNotDivide):
        make_order_spec(5, "l2", f)


def brute_valid_q(l, variant, bound):
    e = Variant(variant).order(l)
    out = []
    for q in range(2, bound + 1):
        pr = prime_power(q)
        if pr and (q - 1) % e == 0:
            out.append((pr[0], pr[1], q, (q - 1) // e))
    return out


def test_enumerate_examples():
    got = [t[:4] for t in enumerate_valid_q(3, "l2", 100)]
    assert got == [(19, 1, 19, 2), (37, 1, 37, 4), (2, 6, 64, 7), (73, 1, 73, 8)]
    got = [t[:4] for t in enumerate_valid_q(5, "2l2", 200)]
    assert (101, 1, 101, 2) in got and (151, 1, 151, 3) in got
    assert enumerate_valid_q(3, "2l2", 18) == []


@pytest.mark.parametrize("l", [3, 5, 7, 11])
@pytest.mark.parametrize("variant", ["l2", "2l2"])
def test_enumerate_matches_scan(l, variant):
    rows = enumerate_valid_q(l, variant, 5000)
    assert [r[:4] for r in rows] == brute_valid_q(l, variant, 5000)
    e = Variant(variant).order(l)
    for p, r, q, k, parity in rows:
        assert q == p**r and e * k == q - 1
        if variant == "l2" and q % 2:
            assert k % 2 == 0
        if variant == "2l2":
            assert p != 2
            assert parity is (Parity.EVEN_OR_CHAR2 if k % 2 == 0 else Parity.ODD)
        else:
            assert parity is Parity.EVEN_OR_CHAR2
