"""Numerical semigroups, the Arf property and Arf closure.

A :class:`NumericalSemigroup` is stored as its elements below the conductor
together with the conductor; everything from the conductor on belongs to it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import gcd
from typing import Iterable

from .errors import InputError

__all__ = [
    "NumericalSemigroup",
    "arf_closure",
    "characters",
    "from_generators",
    "from_multiplicity_sequence",
    "is_arf",
    "jacobian_multiplicity_sequence",
    "multiplicity_sequence",
]


@dataclass(frozen=True, order=True)
class NumericalSemigroup:
    small: tuple[int, ...]
    conductor: int

    def __post_init__(self):
        c = self.conductor
        if c < 0 or (c > 0 and (not self.small or self.small[0] != 0)):
            raise InputError("a numerical semigroup contains 0")
        if list(self.small) != sorted(set(self.small)) or any(not 0 <= x < c for x in self.small):
            raise InputError("small elements must be distinct, sorted and below the conductor")
        if c > 0 and c - 1 in self.small:
            raise InputError(f"conductor {c} is not minimal")

    @classmethod
    def from_elements(cls, elements: Iterable[int], conductor: int) -> "NumericalSemigroup":
        """Canonicalize: ``elements`` below ``conductor`` plus the full tail.

        ``conductor`` here only needs to be an upper bound; it is lowered to
        the true conductor.
        """
        members = {x for x in elements if 0 <= x < conductor}
        c = conductor
        while c > 0 and c - 1 in members:
            c -= 1
        members.add(0)
        return cls(tuple(sorted(x for x in members if x < c)), c)

    def __contains__(self, n: int) -> bool:
        return n >= self.conductor or n in self._small_set()

    def _small_set(self) -> frozenset:
        return _frozen(self.small)

    @property
    def multiplicity(self) -> int:
        """Least nonzero element (1 for the full semigroup)."""
        if self.conductor == 0:
            return 1
        return self.small[1] if len(self.small) > 1 else self.conductor

    @property
    def frobenius(self) -> int:
        return self.conductor - 1

    def gaps(self) -> tuple[int, ...]:
        s = self._small_set()
        return tuple(n for n in range(self.conductor) if n not in s)

    def elements(self, upto: int) -> list[int]:
        """Members ``<= upto``."""
        return [n for n in range(upto + 1) if n in self]

    def is_full(self) -> bool:
        return self.conductor == 0

    def minimal_generators(self) -> tuple[int, ...]:
        if self.conductor == 0:
            return (1,)
        # minimal generators never exceed conductor + multiplicity - 1
        top = self.conductor + self.multiplicity - 1
        return tuple(x for x in self.elements(top)[1:] if not _is_sum(x, self))

    def contains_semigroup(self, other: "NumericalSemigroup") -> bool:
        return all(g not in other for g in self.gaps())

    def __str__(self):
        if self.conductor == 0:
            return "N"
        return "{" + ", ".join(map(str, self.small)) + f", {self.conductor}, ->" + "}"


@lru_cache(maxsize=4096)
def _frozen(t: tuple) -> frozenset:
    return frozenset(t)


def _is_sum(x: int, S: NumericalSemigroup) -> bool:
    return any(a in S and x - a in S for a in range(1, x // 2 + 1))


def from_generators(gens: Iterable[int]) -> NumericalSemigroup:
    """Smallest numerical semigroup containing ``gens``."""
    g = sorted(set(gens))
    if not g:
        raise InputError("empty generator set")
    if any(not isinstance(x, int) or x <= 0 for x in g):
        raise InputError(f"generators must be positive integers, got {g}")
    d = 0
    for x in g:
        d = gcd(d, x)
    if d != 1:
        raise InputError(f"generators {g} have gcd {d}; the semigroup would not be co-finite")
    m = g[0]
    # sieve until m consecutive members appear; then everything beyond is in
    member = [True]
    run = 0
    n = 0
    while run < m:
        n += 1
        hit = any(x <= n and member[n - x] for x in g)
        member.append(hit)
        run = run + 1 if hit else 0
    start = n - m + 1
    return NumericalSemigroup.from_elements([k for k in range(start) if member[k]], start)


def _shift_generators(G: NumericalSemigroup, m: int) -> list[int]:
    # {n - m : n in G, n >= m} minus 0; finite part plus enough of the tail
    top = max(G.conductor, m) + m + 1
    return [n - m for n in range(m + 1, top + 1) if n in G]


def is_arf(G: NumericalSemigroup) -> bool:
    """Every shift ``{n - m : n in G, n >= m}`` with ``m`` in ``G`` is additively closed."""
    c = G.conductor
    small = G.small
    for m in small:
        shifted = [n - m for n in small if n >= m]
        limit = c - m
        shifted_set = set(shifted)
        for i, a in enumerate(shifted):
            for b in shifted[i:]:
                s = a + b
                if s >= limit:
                    break
                if s not in shifted_set:
                    return False
    return True


def arf_closure(G: NumericalSemigroup) -> NumericalSemigroup:
    """Smallest Arf semigroup containing ``G``.

    Recursive shift: with ``m`` the multiplicity,
    ``*G = {0} + (m + *<n - m : n in G, n >= m>)``.
    """
    return _arf_closure(G)


@lru_cache(maxsize=65536)
def _arf_closure(G: NumericalSemigroup) -> NumericalSemigroup:
    if G.is_full() or is_arf(G):
        return G
    m = G.multiplicity
    inner = _arf_closure(from_generators(_shift_generators(G, m)))
    c = m + inner.conductor
    return NumericalSemigroup.from_elements([0] + [m + x for x in inner.small], c)


def multiplicity_sequence(G: NumericalSemigroup) -> tuple[int, ...]:
    """Consecutive differences of the elements, cut at the first 1."""
    if not is_arf(G):
        raise InputError(f"{G} is not an Arf semigroup")
    if G.is_full():
        return (1,)
    elems = list(G.small) + [G.conductor, G.conductor + 1]
    diffs = [b - a for a, b in zip(elems, elems[1:])]
    return tuple(diffs[: diffs.index(1) + 1])


def from_multiplicity_sequence(seq: Iterable[int]) -> NumericalSemigroup:
    """Partial sums; the inverse of :func:`multiplicity_sequence` on Arf semigroups."""
    seq = list(seq)
    if not seq or seq[-1] != 1 or any(x < 1 for x in seq) or 1 in seq[:-1]:
        raise InputError(f"not a multiplicity sequence: {seq}")
    sums = [0]
    for x in seq[:-1]:
        sums.append(sums[-1] + x)
    return NumericalSemigroup.from_elements(sums, sums[-1])


def characters(G: NumericalSemigroup) -> tuple[int, ...]:
    """Minimal generators of the smallest semigroup whose Arf closure is ``G``.

    Exhaustive search over subsets of the minimal generators of ``G``, by
    size and then lexicographically; the first hit is returned.
    """
    if not is_arf(G):
        raise InputError(f"{G} is not an Arf semigroup")
    if G.is_full():
        return (1,)
    pool = G.minimal_generators()
    m = G.multiplicity
    rest = [x for x in pool if x != m]
    for size in range(len(rest) + 1):
        for combo in combinations(rest, size):
            cand = (m, *combo)
            if _gcd_all(cand) != 1:
                continue
            if arf_closure(from_generators(cand)) == G:
                return cand
    raise AssertionError(f"no character set found for {G}")  # pool itself always works


def _gcd_all(xs: Iterable[int]) -> int:
    d = 0
    for x in xs:
        d = gcd(d, x)
    return d


def jacobian_multiplicity_sequence(chars: Iterable[int]) -> tuple[int, ...]:
    """Replay the multiplicity sequence from a character set.

    Each step emits the minimum ``m`` and subtracts it from every other
    element; zeros and surplus copies of ``m`` are discarded.
    """
    current = sorted(set(chars))
    if not current or current[0] <= 0:
        raise InputError(f"characters must be positive integers, got {current}")
    if _gcd_all(current) != 1:
        raise InputError(f"characters {current} have gcd {_gcd_all(current)}")
    out = []
    while True:
        m = current[0]
        out.append(m)
        if m == 1:
            return tuple(out)
        current = sorted({m} | {e - m for e in current[1:] if e != m})
