"""Order parameters (l, e, q, k) and the parity case that drives dispatch."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import DoesNotDivide, LTooSmall, NotPrime
from .field import FieldSpec, is_prime, prime_power, q_bound


class Variant(str, enum.Enum):
    L2 = "l2"
    TWO_L2 = "2l2"

    def order(self, l: int) -> int:
        return l * l if self is Variant.L2 else 2 * l * l


class Parity(str, enum.Enum):
    EVEN_OR_CHAR2 = "EVEN_OR_CHAR2"
    ODD = "ODD"


@dataclass(frozen=True)
class OrderSpec:
    l: int
    variant: Variant
    e: int
    q: int
    k: int
    parity_case: Parity

    @property
    def half(self) -> int:
        """l^2, the shift used by the odd-case symmetries."""
        return self.l * self.l

    @property
    def phi(self) -> int:
        return self.l * (self.l - 1)

    def to_dict(self) -> dict:
        return {
            "l": self.l,
            "variant": self.variant.value,
            "e": self.e,
            "q": self.q,
            "k": self.k,
            "parity_case": self.parity_case.value,
        }


def parity_for(q: int, k: int) -> Parity:
    if k % 2 == 0 or q % 2 == 0:
        return Parity.EVEN_OR_CHAR2
    return Parity.ODD


def check_l(l: int) -> None:
    if l < 3:
        raise LTooSmall(f"l={l} must be >= 3")
    if not is_prime(l):
        raise NotPrime(f"l={l} is not prime")


def make_order_spec(l: int, variant: Variant | str, f: FieldSpec | int) -> OrderSpec:
    check_l(l)
    variant = Variant(variant)
    q = f if isinstance(f, int) else f.q
    e = variant.order(l)
    if (q - 1) % e:
        raise DoesNotDivide(f"e={e} does not divide q-1={q - 1}")
    k = (q - 1) // e
    return OrderSpec(l, variant, e, q, k, parity_for(q, k))


def enumerate_valid_q(
    l: int, variant: Variant | str, bound: int
) -> list[tuple[int, int, int, int, Parity]]:
    """All prime powers q <= bound with e | q - 1, as (p, r, q, k, parity)."""
    check_l(l)
    variant = Variant(variant)
    if bound > q_bound():
        raise ValueError(f"bound {bound} exceeds global q bound {q_bound()}")
    e = variant.order(l)
    out = []
    for q in range(e + 1, bound + 1, e):
        pr = prime_power(q)
        if pr is None:
            continue
        k = (q - 1) // e
        out.append((pr[0], pr[1], q, k, parity_for(q, k)))
    return out
