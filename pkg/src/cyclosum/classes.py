"""Equivalence classes of index pairs (a, b) under the cyclotomic-number symmetries.

Cyclotomic numbers of order e satisfy (a, b) = (-a, b - a) always, and
either (a, b) = (b, a) when k is even or q = 2^r, or
(a, b) = (b + e/2, a + e/2) otherwise. Closing under these gives orbits of
size 1, 2, 3 or 6; one value per orbit is enough to evaluate every Jacobi
sum J(1, n).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import OutOfRange
from .params import OrderSpec, Parity

Pair = tuple[int, int]


def generating_maps(spec: OrderSpec) -> list[Callable[[int, int], Pair]]:
    """The five non-identity maps (a, b) -> (a', b') for the spec's parity case."""
    e = spec.e
    if spec.parity_case is Parity.EVEN_OR_CHAR2:
        return [
            lambda a, b: (b % e, a % e),
            lambda a, b: ((a - b) % e, -b % e),
            lambda a, b: ((b - a) % e, -a % e),
            lambda a, b: (-a % e, (b - a) % e),
            lambda a, b: (-b % e, (a - b) % e),
        ]
    s = spec.half
    return [
        lambda a, b: ((b + s) % e, (a + s) % e),
        lambda a, b: ((s + a - b) % e, -b % e),
        lambda a, b: ((s + b - a) % e, (s - a) % e),
        lambda a, b: (-a % e, (b - a) % e),
        lambda a, b: ((s - b) % e, (a - b) % e),
    ]


def _check(a: int, b: int, e: int) -> None:
    if not (0 <= a < e and 0 <= b < e):
        raise OutOfRange(f"({a}, {b}) outside [0, {e})^2")


def orbit(a: int, b: int, spec: OrderSpec) -> set[Pair]:
    """Breadth-first closure of {(a, b)} under the generating maps."""
    _check(a, b, spec.e)
    maps = generating_maps(spec)
    seen = {(a, b)}
    frontier = [(a, b)]
    while frontier:
        nxt = []
        for x, y in frontier:
            for m in maps:
                img = m(x, y)
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return seen


def canonical_rep(a: int, b: int, spec: OrderSpec) -> Pair:
    return min(orbit(a, b, spec))


@dataclass(frozen=True)
class PairClass:
    rep: Pair
    members: tuple[Pair, ...]

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True, eq=False)
class ClassPartition:
    order_spec: OrderSpec
    classes: list[PairClass]
    # flat cell index a*e + b -> flat index of the class representative
    rep_index: np.ndarray = field(repr=False)

    def rep_of(self, a: int, b: int) -> Pair:
        e = self.order_spec.e
        _check(a, b, e)
        r = int(self.rep_index[a * e + b])
        return divmod(r, e)

    @property
    def reps(self) -> list[Pair]:
        return [c.rep for c in self.classes]

    def __len__(self) -> int:
        return len(self.classes)


def _map_arrays(spec: OrderSpec) -> list[np.ndarray]:
    e = spec.e
    idx = np.arange(e * e, dtype=np.int64)
    a, b = idx // e, idx % e
    out = []
    for m in generating_maps(spec):
        # the lambdas only use +, -, % so they broadcast over arrays
        x, y = m(a, b)
        out.append(x * e + y)
    return out


def partition(spec: OrderSpec) -> ClassPartition:
    """Partition {0..e-1}^2 into orbits; representative = lexicographic minimum.

    Orbits are found by min-label propagation along the generating
    permutations, which settles on the orbit minimum once no label changes.
    """
    e = spec.e
    maps = _map_arrays(spec)
    label = np.arange(e * e, dtype=np.int64)
    while True:
        new = label
        for m in maps:
            new = np.minimum(new, new[m])
        if np.array_equal(new, label):
            break
        label = new
    label.setflags(write=False)

    order = np.argsort(label, kind="stable")
    sorted_labels = label[order]
    starts = np.flatnonzero(np.r_[True, sorted_labels[1:] != sorted_labels[:-1]])
    ends = np.r_[starts[1:], len(order)]
    classes = []
    for s, t in zip(starts.tolist(), ends.tolist()):
        cells = order[s:t].tolist()
        members = tuple(divmod(c, e) for c in cells)
        classes.append(PairClass(members[0], members))
    return ClassPartition(spec, classes, label)


def class_size_census(part: ClassPartition) -> dict[int, int]:
    counts = Counter(c.size for c in part.classes)
    return {s: counts.get(s, 0) for s in (1, 2, 3, 6)}


def expected_class_count(l: int, e: int) -> int:
    """Closed-form class count for l >= 5; l = 3 has an extra 2-class."""
    if l == 3:
        return {9: 19, 18: 64}[e]
    return e + (e - 1) * (e - 2) // 6
