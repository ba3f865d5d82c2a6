"""Quadratic forms over the two-element field and their Arf invariant.

A form on ``GF(2)^n`` is stored by its monomials ``x_i x_j`` with
``i <= j`` (0-based).  Vectors are tuples of bits at the API boundary and
int bitmasks (bit ``i`` = coordinate ``i``) internally.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InconsistencyError, InputError

ENUMERATION_LIMIT = 24

VectorF2 = tuple[int, ...]


def _parity(x: int) -> int:
    return bin(x).count("1") & 1


def to_mask(bits: Sequence[int]) -> int:
    mask = 0
    for i, b in enumerate(bits):
        if b not in (0, 1):
            raise InputError(f"vector entries must be 0 or 1, got {b!r}")
        if b:
            mask |= 1 << i
    return mask


def to_bits(mask: int, dim: int) -> VectorF2:
    return tuple((mask >> i) & 1 for i in range(dim))


@dataclass(frozen=True)
class QuadraticFormF2:
    """``q(x) = sum over (i, j) in monomials of x_i x_j`` mod 2."""

    dim: int
    monomials: frozenset

    def __post_init__(self):
        if self.dim < 0:
            raise InputError("dimension must be a natural number")
        for i, j in self.monomials:
            if not 0 <= i <= j < self.dim:
                raise InputError(f"monomial x{i + 1}*x{j + 1} outside dimension {self.dim}")

    @classmethod
    def from_monomials(cls, dim: int, pairs: Iterable[tuple[int, int]]) -> "QuadraticFormF2":
        """Build from 0-based index pairs; repeated monomials cancel mod 2."""
        seen: set[tuple[int, int]] = set()
        for i, j in pairs:
            key = (min(i, j), max(i, j))
            seen ^= {key}
        return cls(dim, frozenset(seen))

    @classmethod
    def from_matrix(cls, coeffs: Sequence[Sequence[int]]) -> "QuadraticFormF2":
        """Upper-triangular 0/1 array; entries below the diagonal are ignored."""
        n = len(coeffs)
        return cls(n, frozenset((i, j) for i in range(n) for j in range(i, n) if coeffs[i][j] & 1))

    @classmethod
    def parse(cls, text: str, dim: int | None = None) -> "QuadraticFormF2":
        """Parse ``"x1*x2 + x3^2"``; a lone ``x3`` means ``x3^2``."""
        src = re.sub(r"\s+", "", text)
        pairs = []
        top = 0
        if src not in ("", "0"):
            for term in src.split("+"):
                m = (re.fullmatch(r"x(\d+)\*x(\d+)", term)
                     or re.fullmatch(r"x(\d+)(?:\^2)?", term))
                if not m:
                    raise InputError(f"malformed monomial {term!r} in form {text!r}")
                idx = [int(g) for g in m.groups() if g is not None]
                if len(idx) == 1:
                    idx = idx * 2
                if min(idx) < 1:
                    raise InputError("variables are numbered from x1")
                top = max(top, *idx)
                pairs.append((idx[0] - 1, idx[1] - 1))
        if dim is None:
            dim = top
        elif dim < top:
            raise InputError(f"form mentions x{top} but dim is {dim}")
        return cls.from_monomials(dim, pairs)

    def matrix(self) -> list[list[int]]:
        return [[int((i, j) in self.monomials) if j >= i else 0 for j in range(self.dim)]
                for i in range(self.dim)]

    def __str__(self):
        terms = [f"x{i + 1}^2" if i == j else f"x{i + 1}*x{j + 1}" for i, j in sorted(self.monomials)]
        return " + ".join(terms) or "0"

    # bitmask internals -------------------------------------------------

    def _diag(self) -> int:
        return sum(1 << i for i, j in self.monomials if i == j)

    def _upper_rows(self) -> list[int]:
        rows = [0] * self.dim
        for i, j in self.monomials:
            if i != j:
                rows[i] |= 1 << j
        return rows

    def _gram_rows(self) -> list[int]:
        rows = [0] * self.dim
        for i, j in self.monomials:
            if i != j:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
        return rows

    def value(self, x: int) -> int:
        """``q`` on a bitmask."""
        acc = _parity(x & self._diag())
        for i, row in enumerate(self._upper_rows()):
            if x >> i & 1:
                acc ^= _parity(row & x)
        return acc

    def pairing(self, x: int, y: int) -> int:
        return self.value(x ^ y) ^ self.value(x) ^ self.value(y)


def _check_vector(q: QuadraticFormF2, x: Sequence[int]) -> int:
    if len(x) != q.dim:
        raise InputError(f"vector of length {len(x)} against a form of dimension {q.dim}")
    return to_mask(x)


def evaluate(q: QuadraticFormF2, x: Sequence[int]) -> int:
    return q.value(_check_vector(q, x))


def bilinear(q: QuadraticFormF2, x: Sequence[int], y: Sequence[int]) -> int:
    """Polarization ``q(x+y) + q(x) + q(y)``."""
    return q.pairing(_check_vector(q, x), _check_vector(q, y))


def rank_f2(rows: Iterable[int]) -> int:
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
            basis.sort(reverse=True)
    return len(basis)


def is_nondegenerate(q: QuadraticFormF2) -> bool:
    return rank_f2(q._gram_rows()) == q.dim


@dataclass(frozen=True)
class SymplecticBasis:
    pairs: tuple[tuple[VectorF2, VectorF2], ...]

    def masks(self) -> list[tuple[int, int]]:
        return [(to_mask(a), to_mask(b)) for a, b in self.pairs]

    def is_valid_for(self, q: QuadraticFormF2) -> bool:
        """Check the pairing table and linear independence."""
        pairs = self.masks()
        if 2 * len(pairs) != q.dim:
            return False
        for i, (a, b) in enumerate(pairs):
            for j, (c, d) in enumerate(pairs):
                if q.pairing(a, d) != (i == j) or q.pairing(a, c) or q.pairing(b, d):
                    return False
        return rank_f2([v for p in pairs for v in p]) == q.dim


def _require_nondegenerate(q: QuadraticFormF2) -> None:
    if not is_nondegenerate(q):
        raise InputError(f"form {q} is degenerate; the Arf invariant needs a "
                         f"nondegenerate polarization")


def symplectic_basis(q: QuadraticFormF2) -> SymplecticBasis:
    """Greedy symplectic Gram-Schmidt on the polarization of ``q``."""
    _require_nondegenerate(q)
    space = [1 << i for i in range(q.dim)]
    pairs = []
    while space:
        a = space.pop(0)
        k = next((k for k, v in enumerate(space) if q.pairing(a, v)), None)
        if k is None:
            raise InconsistencyError("no symplectic partner in a nondegenerate complement")
        b = space.pop(k)
        # project the rest onto the orthogonal complement of span(a, b)
        space = [v ^ (a if q.pairing(v, b) else 0) ^ (b if q.pairing(v, a) else 0) for v in space]
        pairs.append((to_bits(a, q.dim), to_bits(b, q.dim)))
    return SymplecticBasis(tuple(pairs))


def arf_symplectic(q: QuadraticFormF2, basis: SymplecticBasis | None = None) -> int:
    """``sum q(a_i) q(b_i)`` mod 2 over a symplectic basis."""
    _require_nondegenerate(q)
    if basis is None:
        basis = symplectic_basis(q)
    return sum(q.value(a) & q.value(b) for a, b in basis.masks()) & 1


def count_ones(q: QuadraticFormF2) -> int:
    """Number of vectors with ``q(x) = 1``, by Gray-code enumeration."""
    if q.dim > ENUMERATION_LIMIT:
        raise InputError(f"exhaustive enumeration limited to dim <= {ENUMERATION_LIMIT}")
    diag = q._diag()
    gram = q._gram_rows()
    x = val = ones = 0
    for step in range(1, 1 << q.dim):
        k = (step & -step).bit_length() - 1
        # q(x + e_k) = q(x) + q(e_k) + (x, e_k)
        val ^= (diag >> k & 1) ^ _parity(gram[k] & x)
        x ^= 1 << k
        ones += val
    return ones


def arf_democratic(q: QuadraticFormF2) -> int:
    """Majority value of ``q`` over all of ``GF(2)^n``."""
    _require_nondegenerate(q)
    ones = count_ones(q)
    total = 1 << q.dim
    if 2 * ones == total:
        raise InconsistencyError(f"form {q} takes the value 1 on exactly half the vectors")
    return int(2 * ones > total)


def direct_sum(q1: QuadraticFormF2, q2: QuadraticFormF2) -> QuadraticFormF2:
    shift = q1.dim
    return QuadraticFormF2(q1.dim + q2.dim,
                           q1.monomials | {(i + shift, j + shift) for i, j in q2.monomials})


def pullback(q: QuadraticFormF2, columns: Sequence[Sequence[int]]) -> QuadraticFormF2:
    """The form ``x -> q(M x)`` where ``M`` has the given columns."""
    cols = [to_mask(c) for c in columns]
    if len(cols) != q.dim or any(len(c) != q.dim for c in columns):
        raise InputError("change of basis must be a square matrix of the form's dimension")
    pairs = [(i, i) for i, c in enumerate(cols) if q.value(c)]
    pairs += [(i, j) for i in range(q.dim) for j in range(i + 1, q.dim) if q.pairing(cols[i], cols[j])]
    return QuadraticFormF2(q.dim, frozenset(pairs))
