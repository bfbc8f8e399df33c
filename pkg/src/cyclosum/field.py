"""Finite fields F_q, q = p^r, with a full discrete-log (index) table.

Elements are stored as coefficient tuples (constant term first) of a
polynomial of degree < r over F_p. Tables key elements by the integer
encoding ``sum(c[i] * p**i)``, so every table is a dense array of length q.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from math import isqrt

import numpy as np

from .errors import BoundExceeded, NotAGenerator, NotPrime

DEFAULT_QMAX = 2**20


def q_bound() -> int:
    """Upper bound on q; the ``CYCLOSUM_QMAX`` environment variable overrides it."""
    raw = os.environ.get("CYCLOSUM_QMAX")
    return int(raw) if raw else DEFAULT_QMAX


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, r) with q = p^r, or None if q is not a prime power."""
    if q < 2:
        return None
    p = prime_factors(q)
    if len(p) != 1:
        return None
    p = p[0]
    r = 0
    while q > 1:
        q //= p
        r += 1
    return p, r


# -- polynomials over F_p: lists of ints, constant term first ---------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _trim(a)
    return a


def _poly_mulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    return _poly_mod(prod, m, p)


def _poly_powmod(a: list[int], n: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(a, m, p)
    while n:
        if n & 1:
            result = _poly_mulmod(result, base, m, p)
        base = _poly_mulmod(base, base, m, p)
        n >>= 1
    return result


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _poly_sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def is_irreducible(poly: list[int] | tuple[int, ...], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p (constant term first)."""
    f = _trim([c % p for c in poly])
    r = len(f) - 1
    if r < 1:
        return False
    if r == 1:
        return True
    x = [0, 1]
    # x^(p^i) mod f for i = 1..r
    frob = [x]
    for _ in range(r):
        frob.append(_poly_powmod(frob[-1], p, f, p))
    if _poly_sub(frob[r], x, p):
        return False
    for d in prime_factors(r):
        g = _poly_gcd(f, _poly_sub(frob[r // d], x, p), p)
        if len(g) != 1:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    p: int
    r: int
    q: int
    modulus_poly: tuple[int, ...] = ()

    def to_dict(self) -> dict:
        return {"p": self.p, "r": self.r, "q": self.q, "modulus_poly": list(self.modulus_poly)}


@dataclass(frozen=True)
class FieldElement:
    coeffs: tuple[int, ...]

    def encode(self, f: FieldSpec) -> int:
        return encode(self, f)


def make_field(p: int, r: int = 1, bound: int | None = None) -> FieldSpec:
    """Build F_{p^r}.

    For r > 1 the modulus is the monic irreducible of degree r with the
    smallest encoding of its lower coefficients (highest degree compared
    first).
    """
    if not is_prime(p):
        raise NotPrime(f"p={p} is not prime")
    if r < 1:
        raise ValueError(f"extension degree must be >= 1, got {r}")
    q = p**r
    bound = q_bound() if bound is None else bound
    if q > bound:
        raise BoundExceeded(f"q={q} exceeds bound {bound}")
    if r == 1:
        return FieldSpec(p, 1, q)
    for low in range(p**r):
        poly = [(low // p**i) % p for i in range(r)] + [1]
        if is_irreducible(poly, p):
            return FieldSpec(p, r, q, tuple(poly))
    raise AssertionError("unreachable: irreducible polynomials exist in every degree")


def field_for_q(q: int, bound: int | None = None) -> FieldSpec:
    pr = prime_power(q)
    if pr is None:
        raise NotPrime(f"q={q} is not a prime power")
    return make_field(*pr, bound=bound)


def element(value: int | list[int] | tuple[int, ...], f: FieldSpec) -> FieldElement:
    """Element from an integer encoding or a coefficient sequence."""
    if isinstance(value, (list, tuple)):
        coeffs = [c % f.p for c in value] + [0] * (f.r - len(value))
        return FieldElement(tuple(coeffs[: f.r]))
    value %= f.q
    return FieldElement(tuple((value // f.p**i) % f.p for i in range(f.r)))


def encode(x: FieldElement, f: FieldSpec) -> int:
    out = 0
    for c in reversed(x.coeffs):
        out = out * f.p + c
    return out


def zero(f: FieldSpec) -> FieldElement:
    return FieldElement((0,) * f.r)


def one(f: FieldSpec) -> FieldElement:
    return FieldElement((1,) + (0,) * (f.r - 1))


def add(x: FieldElement, y: FieldElement, f: FieldSpec) -> FieldElement:
    return FieldElement(tuple((a + b) % f.p for a, b in zip(x.coeffs, y.coeffs)))


def neg(x: FieldElement, f: FieldSpec) -> FieldElement:
    return FieldElement(tuple((-a) % f.p for a in x.coeffs))


def mul(x: FieldElement, y: FieldElement, f: FieldSpec) -> FieldElement:
    if f.r == 1:
        return FieldElement(((x.coeffs[0] * y.coeffs[0]) % f.p,))
    prod = _poly_mulmod(list(x.coeffs), list(y.coeffs), list(f.modulus_poly), f.p)
    return FieldElement(tuple(prod + [0] * (f.r - len(prod))))


def power(x: FieldElement, n: int, f: FieldSpec) -> FieldElement:
    if n < 0:
        raise ValueError("exponent must be non-negative")
    result = one(f)
    base = x
    while n:
        if n & 1:
            result = mul(result, base, f)
        base = mul(base, base, f)
        n >>= 1
    return result


def find_generator(f: FieldSpec) -> FieldElement:
    """Smallest-encoding generator of F_q^*, skipping 0 and 1."""
    if f.q == 2:
        return one(f)
    e1 = one(f)
    exps = [(f.q - 1) // ell for ell in prime_factors(f.q - 1)]
    for code in range(2, f.q):
        x = element(code, f)
        if all(power(x, n, f) != e1 for n in exps):
            return x
    raise AssertionError("unreachable: F_q^* is cyclic")


def succ_codes(codes: np.ndarray, f: FieldSpec) -> np.ndarray:
    """Encodings of v + 1 for an array of encodings of v."""
    c0 = codes % f.p
    return codes - c0 + (c0 + 1) % f.p


@dataclass(frozen=True, eq=False)
class IndexTable:
    """Discrete-log table: ``pow_of[i]`` encodes gamma^i, ``log_of[code]`` inverts it.

    ``log_of[0]`` is -1; zero has no index.
    """

    field: FieldSpec
    generator: FieldElement
    pow_of: np.ndarray = field(repr=False)
    log_of: np.ndarray = field(repr=False)

    def ind(self, x: FieldElement | int) -> int:
        code = x if isinstance(x, int) else encode(x, self.field)
        if code == 0:
            raise ValueError("zero has no index")
        return int(self.log_of[code])

    @property
    def minus_one(self) -> int:
        """Encoding of -1."""
        return encode(neg(one(self.field), self.field), self.field)


def build_index_table(f: FieldSpec, gamma: FieldElement | None = None) -> IndexTable:
    if gamma is None:
        gamma = find_generator(f)
    n = f.q - 1
    pow_of = np.empty(n, dtype=np.int64)
    log_of = np.full(f.q, -1, dtype=np.int64)
    if f.r == 1:
        g = gamma.coeffs[0]
        x = 1
        for i in range(n):
            if log_of[x] != -1:
                raise NotAGenerator(f"{gamma} has order {i}")
            pow_of[i] = x
            log_of[x] = i
            x = x * g % f.p
    else:
        x = one(f)
        for i in range(n):
            code = encode(x, f)
            if log_of[code] != -1:
                raise NotAGenerator(f"{gamma} has order {i}")
            pow_of[i] = code
            log_of[code] = i
            x = mul(x, gamma, f)
    pow_of.setflags(write=False)
    log_of.setflags(write=False)
    return IndexTable(f, gamma, pow_of, log_of)
