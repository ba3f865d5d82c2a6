"""Herbrand function, upper numbering and jumps of a ramification filtration.

The filtration is given as the chain of group orders
``|G_-1|, |G_0|, ..., |G_r|`` with ``|G_r| = 1``.  All values are exact
:class:`~fractions.Fraction` objects.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InputError

__all__ = [
    "Filtration",
    "HasseArfReport",
    "hasse_arf_check",
    "herbrand_phi",
    "herbrand_psi",
    "lower_jumps",
    "phi_breakpoints",
    "upper_group_order",
    "upper_jumps",
]

PASS = "PASS"
VIOLATION = "VIOLATION"
NON_ABELIAN_INFO = "NON_ABELIAN_INFO"


@dataclass(frozen=True)
class Filtration:
    orders: tuple[int, ...]
    abelian: bool = False
    label: str = ""

    def __post_init__(self):
        o = tuple(self.orders)
        object.__setattr__(self, "orders", o)
        if len(o) < 2:
            raise InputError("need at least |G_-1| and |G_0|")
        if any(not isinstance(x, int) or x < 1 for x in o):
            raise InputError(f"group orders must be positive integers, got {list(o)}")
        for big, small in zip(o, o[1:]):
            if big % small:
                raise InputError(f"{small} does not divide {big}: not a subgroup chain")
        if o[-1] != 1:
            raise InputError("the filtration must end with the trivial group")
        if len(o) > 2 and o[-2] == 1:
            raise InputError("trailing trivial groups: the last index must be minimal")

    @property
    def top(self) -> int:
        """Largest lower index ``r`` (where ``G_r`` is trivial)."""
        return len(self.orders) - 2

    def lower_order(self, i: int) -> int:
        """``|G_i|`` for an integer ``i >= -1``."""
        if i < -1:
            raise InputError(f"lower index {i} below -1")
        return self.orders[i + 1] if i <= self.top else 1

    def order_at(self, u) -> int:
        """``|G_u|`` for real ``u``: ``G_u`` means ``G_ceil(u)``."""
        return self.lower_order(math.ceil(Fraction(u)))

    @property
    def inertia(self) -> int:
        return self.orders[1]


def _check_arg(x) -> Fraction:
    x = Fraction(x)
    if x < -1:
        raise InputError(f"argument {x} below -1")
    return x


def herbrand_phi(F: Filtration, u) -> Fraction:
    """``phi(u) = integral_0^u dt / (G_0 : G_t)``, identity on ``[-1, 0]``."""
    u = _check_arg(u)
    if u <= 0:
        return u
    g0 = F.inertia
    total = Fraction(0)
    i = 1
    while i - 1 < u:
        width = min(u, i) - (i - 1)
        total += Fraction(F.lower_order(i), g0) * width
        i += 1
    return total


def herbrand_psi(F: Filtration, v) -> Fraction:
    """Inverse of :func:`herbrand_phi`."""
    v = _check_arg(v)
    if v <= 0:
        return v
    g0 = F.inertia
    reached = Fraction(0)
    i = 1
    while True:
        slope = Fraction(F.lower_order(i), g0)
        if i > F.top or reached + slope >= v:
            return (i - 1) + (v - reached) / slope
        reached += slope
        i += 1


def phi_breakpoints(F: Filtration) -> list[tuple[int, Fraction]]:
    return [(u, herbrand_phi(F, u)) for u in range(F.top + 1)]


def upper_group_order(F: Filtration, v) -> int:
    """``|G^v| = |G_psi(v)|``."""
    return F.order_at(herbrand_psi(F, v))


def lower_jumps(F: Filtration) -> list[int]:
    """Integers ``u >= 0`` with ``G_u != G_(u+1)``."""
    return [u for u in range(F.top) if F.lower_order(u) != F.lower_order(u + 1)]


def upper_jumps(F: Filtration) -> list[Fraction]:
    return sorted(herbrand_phi(F, u) for u in lower_jumps(F))


def is_tamely_split(F: Filtration) -> bool:
    """Whether ``G_-1 != G_0`` (a drop below index 0, reported apart from the jumps)."""
    return F.orders[0] != F.orders[1]


@dataclass(frozen=True)
class HasseArfReport:
    jumps: tuple[Fraction, ...]
    all_integral: bool
    verdict: str


def hasse_arf_check(F: Filtration) -> HasseArfReport:
    """Integrality of upper jumps, demanded only when ``F.abelian``."""
    jumps = tuple(upper_jumps(F))
    integral = all(j.denominator == 1 for j in jumps)
    if not F.abelian:
        verdict = NON_ABELIAN_INFO
    else:
        verdict = PASS if integral else VIOLATION
    return HasseArfReport(jumps, integral, verdict)


def quaternion_filtration() -> Filtration:
    """Totally ramified quaternion extension: ``G_0 = G_1 = Q8``, ``G_2 = G_3 = center``."""
    return Filtration((8, 8, 8, 2, 2, 1), abelian=False, label="quaternion")


def parse_orders(text: str | Sequence[int]) -> tuple[int, ...]:
    if isinstance(text, str):
        try:
            return tuple(int(x) for x in text.split(",") if x.strip())
        except ValueError:
            raise InputError(f"malformed order list {text!r}") from None
    return tuple(text)
