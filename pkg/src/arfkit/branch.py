"""Parametrized curve branches, their local rings and the Arf ring closure.

A branch is a tuple of truncated series without constant term.  Its local
ring ``H = k[[phi_1, ..., phi_n]]`` is represented modulo ``t^T`` by an
echelon basis with one monic element per attained order.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import InputError, PrecisionError, ResolutionError
from .semigroup import (
    NumericalSemigroup,
    arf_closure,
    characters,
    jacobian_multiplicity_sequence,
    multiplicity_sequence,
)
from .series import DEFAULT_TRUNCATION, TruncatedSeries, div, format_series, parse_series

log = logging.getLogger(__name__)

DEFAULT_MAX_STEPS = 64
MAX_TRUNCATION = 512

CONSISTENT = "CONSISTENT"
INCONSISTENT = "INCONSISTENT"


@dataclass(frozen=True)
class BranchParam:
    coords: tuple[TruncatedSeries, ...]

    def __post_init__(self):
        coords = tuple(self.coords)
        object.__setattr__(self, "coords", coords)
        if not coords:
            raise InputError("a branch needs at least one coordinate")
        if len({c.char for c in coords}) != 1:
            raise InputError("coordinates over different coefficient fields")
        for c in coords:
            if c.truncation < 1:
                raise PrecisionError("coordinate known to no order at all")
            if c.coefficient(0):
                raise InputError(f"coordinate {c} has a constant term")
        if all(c.is_zero for c in coords):
            raise PrecisionError("every coordinate is zero at the working precision")

    @classmethod
    def parse(cls, literals: Iterable[str], truncation: int = DEFAULT_TRUNCATION,
              char: int = 0) -> "BranchParam":
        return cls(tuple(parse_series(s, truncation, char) for s in literals))

    @classmethod
    def monomial(cls, exponents: Iterable[int], truncation: int = DEFAULT_TRUNCATION,
                 char: int = 0) -> "BranchParam":
        return cls(tuple(TruncatedSeries.monomial(e, 1, truncation, char) for e in exponents))

    @property
    def truncation(self) -> int:
        return min(c.truncation for c in self.coords)

    @property
    def char(self) -> int:
        return self.coords[0].char

    def truncate(self, truncation: int) -> "BranchParam":
        return BranchParam(tuple(c.truncate(min(truncation, c.truncation)) for c in self.coords))

    def literals(self) -> list[str]:
        return [format_series(c) for c in self.coords]

    def __str__(self):
        return "(" + ", ".join(self.literals()) + ")"


def multiplicity(b: BranchParam) -> int:
    return min(c.order() for c in b.coords if not c.is_zero)


def _sorted_coords(b: BranchParam) -> list[TruncatedSeries]:
    # stable: ties keep input order, zero coordinates go last
    return sorted(b.coords, key=lambda c: (c.is_zero, 0 if c.is_zero else c.order()))


def blow_up(b: BranchParam) -> BranchParam:
    """``(phi_1, phi_2/phi_1 - lambda_2, ...)`` with ``phi_1`` of least order.

    Coordinates that vanish after translation are dropped.
    """
    coords = _sorted_coords(b)
    phi1 = coords[0]
    out = [phi1]
    for k, c in enumerate(coords[1:], start=2):
        if c.is_zero:
            log.info("dropping coordinate %d: zero at precision %d", k, c.truncation)
            continue
        q = div(c, phi1)
        if q.truncation <= 1:
            raise PrecisionError(
                f"truncation exhausted: quotient {k} is indistinguishable from a constant")
        rest = q - q.coefficient(0)
        if rest.is_zero:
            log.info("dropping coordinate %d: constant multiple of the first at precision %d",
                     k, rest.truncation)
            continue
        out.append(rest)
    return BranchParam(tuple(out))


def multiplicity_sequence_blowup(b: BranchParam, max_steps: int = DEFAULT_MAX_STEPS) -> tuple[int, ...]:
    """Multiplicities of ``b`` and its successive blow-ups, up to the first 1."""
    if max_steps < 1:
        raise InputError("max_steps must be at least 1")
    seq = []
    for _ in range(max_steps):
        m = multiplicity(b)
        seq.append(m)
        if m == 1:
            return tuple(seq)
        b = blow_up(b)
    raise ResolutionError(f"not smooth after {max_steps} blow-ups; partial sequence {seq}", seq)


@dataclass(frozen=True)
class SubalgebraBasis:
    """Echelon basis of a subring of ``k[[t]]`` modulo ``t^truncation``.

    Orders at or above ``conductor`` are all attained and stored as monomials.
    """

    basis: Mapping[int, TruncatedSeries]
    truncation: int
    char: int
    conductor: int
    multiplicity: int = field(default=1)

    def orders(self) -> list[int]:
        return sorted(self.basis)


def _certified_tail(orders: Iterable[int], run: int) -> int | None:
    """Start of the first block of consecutive orders containing ``run`` of them."""
    start = prev = None
    for d in sorted(orders):
        if prev is None or d != prev + 1:
            start = d
        prev = d
        if d - start + 1 >= run:
            return start
    return None


def _with_monomial_tail(basis: dict[int, TruncatedSeries], tail: int, T: int,
                        char: int) -> dict[int, TruncatedSeries]:
    out = {d: s for d, s in basis.items() if d < tail}
    for d in range(tail, T):
        out[d] = TruncatedSeries.monomial(d, 1, T, char)
    return dict(sorted(out.items()))


def _reduce(s: TruncatedSeries, basis: Mapping[int, TruncatedSeries], tail: int | None):
    """Residual of ``s`` modulo the span, or ``None`` if it lies in the span."""
    while not s.is_zero:
        d = s.order()
        if tail is not None and d >= tail:
            return None
        piv = basis.get(d)
        if piv is None:
            return s
        s = s - piv * s.leading_coefficient()
    return None


def subalgebra(b: BranchParam, T: int | None = None) -> SubalgebraBasis:
    """Saturate ``{1}`` under multiplication by the coordinates, echelonizing as we go."""
    T = b.truncation if T is None else min(T, b.truncation)
    gens = [c.truncate(T) for c in b.coords if not c.is_zero]
    gens = [g for g in gens if not g.is_zero]
    if not gens:
        raise PrecisionError(f"every coordinate vanishes below t^{T}")
    m = min(g.order() for g in gens)
    char = b.char
    basis: dict[int, TruncatedSeries] = {0: TruncatedSeries.one(T, char)}
    tail = _certified_tail(basis, m)
    queue = deque([basis[0]])
    while queue:
        e = queue.popleft()
        if tail is not None and e.order() >= tail:
            continue
        for g in gens:
            r = _reduce(e * g, basis, tail)
            if r is None:
                continue
            r = r.monic()
            basis[r.order()] = r
            queue.append(r)
            tail = _certified_tail(basis, m)
    if tail is None:
        raise PrecisionError(
            f"no run of {m} consecutive orders below t^{T}; raise the truncation")
    return SubalgebraBasis(_with_monomial_tail(basis, tail, T, char), T, char, tail, m)


def orders_semigroup(H: SubalgebraBasis) -> NumericalSemigroup:
    return NumericalSemigroup.from_elements(H.orders(), H.conductor)


def _quotients_closed(H: SubalgebraBasis, witness: TruncatedSeries) -> bool:
    m = witness.order()
    c = H.conductor
    target = c - m
    quotients = {}
    for d in H.orders():
        if m <= d < c:
            q = div(H.basis[d], witness)
            if q.truncation <= target:
                raise PrecisionError(f"quotients by the order-{m} element are not known to order {target}")
            quotients[d - m] = q.monic()
    keys = sorted(quotients)
    for i, a in enumerate(keys):
        for bkey in keys[i:]:
            if a + bkey >= target:
                break
            if _reduce(quotients[a] * quotients[bkey], quotients, target) is not None:
                return False
    return True


def is_arf_ring(H: SubalgebraBasis, witnesses: Mapping[int, TruncatedSeries] | None = None) -> bool:
    """Whether every quotient set ``{S / S_m : ord S >= m}`` is closed under products.

    ``witnesses`` optionally replaces the basis element used as ``S_m``.
    """
    witnesses = witnesses or {}
    for m in H.orders():
        if 0 < m < H.conductor:
            if not _quotients_closed(H, witnesses.get(m, H.basis[m])):
                return False
    return True


def arf_ring_closure(b: BranchParam, T: int | None = None,
                     max_steps: int = DEFAULT_MAX_STEPS) -> SubalgebraBasis:
    """Basis of the Arf closure via ``*H = k + phi_1 * (*H_1)``."""
    b = b if T is None else b.truncate(T)
    return _ring_closure(b, max_steps)


def _ring_closure(b: BranchParam, depth_left: int) -> SubalgebraBasis:
    H = subalgebra(b)
    if is_arf_ring(H):
        return H
    if depth_left <= 0:
        raise ResolutionError("Arf ring closure did not terminate within the step budget")
    b1 = blow_up(b)
    phi1 = b1.coords[0]
    m = phi1.order()
    inner = _ring_closure(b1, depth_left - 1)
    T = min(phi1.truncation, inner.truncation)
    char = b.char
    basis = {0: TruncatedSeries.one(T, char)}
    for d, s in inner.basis.items():
        p = phi1 * s
        if not p.is_zero:
            basis[m + d] = p.monic()
    conductor = m + inner.conductor
    if T - conductor < m:
        raise PrecisionError(f"Arf closure tail not certified below t^{T}")
    return SubalgebraBasis(_with_monomial_tail(basis, conductor, T, char), T, char, conductor, m)


@dataclass(frozen=True)
class BranchReport:
    """Both multiplicity-sequence routes for one branch.

    The semigroup route reads the sequence off the value semigroup of the
    Arf ring closure.  ``semigroup_closure`` is the Arf closure of the value
    semigroup of ``H`` itself; it is reported, not trusted: it differs from
    ``ring_closure_orders`` as soon as the branch has a second characteristic
    exponent, e.g. ``(t^4, t^6 + t^7)``.
    """

    coords: tuple[str, ...]
    char: int
    truncation: int
    blowup_sequence: tuple[int, ...]
    orders: NumericalSemigroup
    ring_is_arf: bool
    ring_closure_orders: NumericalSemigroup
    semigroup_sequence: tuple[int, ...]
    characters: tuple[int, ...]
    jacobian_sequence: tuple[int, ...]
    semigroup_closure: NumericalSemigroup
    verdict: str
    diagnostics: tuple[str, ...] = ()

    @property
    def closures_agree(self) -> bool:
        return self.semigroup_closure == self.ring_closure_orders

    def core(self) -> tuple:
        """Everything the precision guard compares."""
        return (self.blowup_sequence, self.orders, self.ring_is_arf, self.ring_closure_orders,
                self.semigroup_sequence, self.characters, self.jacobian_sequence,
                self.semigroup_closure)


def _analyse(b: BranchParam, T: int, max_steps: int) -> BranchReport:
    bt = b.truncate(T)
    if bt.truncation < T:
        raise PrecisionError(f"branch data known only to t^{bt.truncation}, need t^{T}")
    blow = multiplicity_sequence_blowup(bt, max_steps)
    H = subalgebra(bt)
    S = orders_semigroup(H)
    ring = arf_ring_closure(bt, max_steps=max_steps)
    closed = orders_semigroup(ring)
    seq = multiplicity_sequence(closed)
    chars = characters(closed)
    jac = jacobian_multiplicity_sequence(chars)
    ok = blow == seq == jac and is_arf_ring(ring)
    return BranchReport(tuple(b.literals()), b.char, T, blow, S, is_arf_ring(H), closed, seq,
                        chars, jac, arf_closure(S), CONSISTENT if ok else INCONSISTENT)


def branch_report(b: BranchParam, T: int = DEFAULT_TRUNCATION, max_steps: int = DEFAULT_MAX_STEPS,
                  precision_guard: bool = True, max_truncation: int = MAX_TRUNCATION) -> BranchReport:
    """Run both multiplicity-sequence routes and cross-check them.

    On a precision failure ``T`` is doubled up to ``max_truncation``.  With
    the guard on, the result at ``T`` must match a rerun at ``2T``; ``b``
    must then be known to ``2T``.
    """
    notes = []
    while True:
        try:
            rep = _analyse(b, T, max_steps)
            if precision_guard:
                again = _analyse(b, 2 * T, max_steps)
                if again.core() != rep.core():
                    raise PrecisionError(f"results at T={T} and T={2 * T} differ")
            break
        except ResolutionError:
            raise
        except PrecisionError as exc:
            if 2 * T > max_truncation:
                raise PrecisionError(f"{exc} (gave up at T={T})") from exc
            notes.append(f"T={T}: {exc}; retrying at T={2 * T}")
            T *= 2
    return BranchReport(**{**rep.__dict__, "diagnostics": tuple(notes)})
