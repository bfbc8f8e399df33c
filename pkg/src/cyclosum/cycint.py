"""Exact arithmetic in Z[zeta_e] for e = l^2 or 2l^2.

Values are integer vectors over the power basis zeta^0 .. zeta^(phi-1),
phi = l(l-1). Powers at or above phi are rewritten with the cyclotomic
polynomial:

    e = l^2:   zeta^phi = -(1 + zeta^l + zeta^2l + ... + zeta^(l(l-2)))
    e = 2l^2:  zeta^phi = -1 + zeta^l - zeta^2l + ... + zeta^(l(l-2))
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

import numpy as np

from .errors import BadOrder, NotCoprime, OrderMismatch
from .field import is_prime

_INT64_MAX = 2**63 - 1


@lru_cache(maxsize=None)
def order_info(e: int) -> tuple[int, int]:
    """Return (l, phi) for e = l^2 or 2l^2 with l an odd prime; BadOrder otherwise."""
    base = e // 2 if e % 2 == 0 else e
    l = isqrt(base)
    if l * l != base or l < 3 or not is_prime(l):
        raise BadOrder(f"e={e} is not l^2 or 2l^2 for an odd prime l")
    return l, l * (l - 1)


def check_sign_of_expo(d: int, e: int) -> int:
    """Bring an exponent into [0, e)."""
    return d % e


@lru_cache(maxsize=None)
def replacement_poly(e: int) -> tuple[int, ...]:
    """Coefficients (length phi) of zeta^phi in the power basis."""
    l, phi = order_info(e)
    coeffs = [0] * phi
    for j in range(l - 1):
        coeffs[j * l] = -1 if e % 2 else -((-1) ** j)
    return tuple(coeffs)


def check_break_replace(d: int, e: int) -> list[int]:
    """Canonical coefficient vector of zeta^d, 0 <= d < e."""
    _, phi = order_info(e)
    p_t = replacement_poly(e)
    pending = {d: 1}
    out = [0] * phi
    while pending:
        t, c = pending.popitem()
        if t < phi:
            out[t] += c
            continue
        # zeta^t = zeta^(t - phi) * zeta^phi
        shift = t - phi
        for s, pc in enumerate(p_t):
            if pc:
                pending[shift + s] = pending.get(shift + s, 0) + c * pc
    return out


@lru_cache(maxsize=None)
def reduction_matrix(e: int) -> np.ndarray:
    """Row d holds the canonical coefficients of zeta^d."""
    _, phi = order_info(e)
    R = np.array([check_break_replace(d, e) for d in range(e)], dtype=np.int64).reshape(e, phi)
    R.setflags(write=False)
    return R


@dataclass(frozen=True)
class CycInt:
    e: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        _, phi = order_info(self.e)
        if len(self.coeffs) != phi:
            raise ValueError(f"expected {phi} coefficients, got {len(self.coeffs)}")

    @classmethod
    def zero(cls, e: int) -> CycInt:
        return cls(e, (0,) * order_info(e)[1])

    @classmethod
    def constant(cls, c: int, e: int) -> CycInt:
        return monomial(c, 0, e)

    @classmethod
    def from_array(cls, arr, e: int) -> CycInt:
        arr = np.asarray(arr)
        if arr.size and np.abs(arr).max() >= _INT64_MAX:
            raise OverflowError("coefficient outside int64 range")
        return cls(e, tuple(int(c) for c in arr))

    @property
    def phi(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: CycInt) -> CycInt:
        return add(self, other)

    def __neg__(self) -> CycInt:
        return negate(self)

    def __sub__(self, other: CycInt) -> CycInt:
        return add(self, negate(other))

    def __rmul__(self, c: int) -> CycInt:
        if not isinstance(c, int):
            return NotImplemented
        return scale(c, self)

    def to_json(self) -> dict:
        return {
            "e": self.e,
            "basis": f"zeta^0..zeta^{self.phi - 1}",
            "coeffs": list(self.coeffs),
        }

    @classmethod
    def from_json(cls, obj: dict) -> CycInt:
        return cls(int(obj["e"]), tuple(int(c) for c in obj["coeffs"]))

    def __str__(self) -> str:
        terms = [f"{c:+d}*z^{t}" for t, c in enumerate(self.coeffs) if c]
        return " ".join(terms) if terms else "0"


def monomial(c: int, d: int, e: int) -> CycInt:
    """c * zeta_e^d in canonical form."""
    row = reduction_matrix(e)[check_sign_of_expo(d, e)]
    return CycInt(e, tuple(int(c) * int(x) for x in row))


def add(x: CycInt, y: CycInt) -> CycInt:
    if x.e != y.e:
        raise OrderMismatch(f"cannot add elements of orders {x.e} and {y.e}")
    return CycInt(x.e, tuple(a + b for a, b in zip(x.coeffs, y.coeffs)))


def negate(x: CycInt) -> CycInt:
    return CycInt(x.e, tuple(-a for a in x.coeffs))


def scale(c: int, x: CycInt) -> CycInt:
    return CycInt(x.e, tuple(c * a for a in x.coeffs))


def from_exponent_counts(counts, e: int) -> CycInt:
    """Canonicalize sum_d counts[d] * zeta^d (counts of length e)."""
    counts = np.asarray(counts, dtype=np.int64)
    if counts.shape != (e,):
        raise ValueError(f"expected {e} exponent counts")
    if float(np.abs(counts.astype(np.float64)).sum()) >= _INT64_MAX // 2:
        raise OverflowError("exponent counts too large for int64 reduction")
    return CycInt.from_array(counts @ reduction_matrix(e), e)


def embed_complex(x: CycInt, m: int = 1) -> complex:
    """Image of x under zeta_e -> exp(2 pi i m / e)."""
    if gcd(m, x.e) != 1:
        raise NotCoprime(f"m={m} shares a factor with e={x.e}")
    w = 2j * cmath.pi * m / x.e
    return complex(sum(c * cmath.exp(w * t) for t, c in enumerate(x.coeffs) if c))


def embed_many(coeffs: np.ndarray, e: int, m: int = 1) -> np.ndarray:
    """Vectorized embed over the last axis of an integer coefficient array."""
    if gcd(m, e) != 1:
        raise NotCoprime(f"m={m} shares a factor with e={e}")
    phi = coeffs.shape[-1]
    basis = np.exp(2j * np.pi * m * np.arange(phi) / e)
    return coeffs.astype(np.float64) @ basis
