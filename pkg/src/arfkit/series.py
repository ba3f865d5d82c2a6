"""Exact truncated power series in one variable ``t``.

Coefficients live either in the rationals (``char == 0``, stored as
:class:`fractions.Fraction`) or in a prime field ``GF(p)`` with ``p <= 97``
(stored as canonical residues ``0 <= c < p``).  A series knows its
coefficients only below its truncation ``T``; everything from ``t^T`` on is
unknown, not zero.

Results of ``+``, ``-`` and ``*`` carry ``min(T_a, T_b)``.  Division by a
series of order ``v`` loses ``v`` more: ``min(T_a, T_b) - v``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import FieldMismatchError, InputError, PrecisionError

Scalar = Union[Fraction, int]

DEFAULT_TRUNCATION = 64
MAX_PRIME = 97

__all__ = [
    "BeyondPrecision",
    "DEFAULT_TRUNCATION",
    "TruncatedSeries",
    "add",
    "div",
    "mul",
    "order",
    "parse_series",
]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def check_characteristic(char: int) -> int:
    if char == 0 or (_is_prime(char) and char <= MAX_PRIME):
        return char
    raise InputError(f"unsupported coefficient field: characteristic {char!r} "
                     f"(use 0 or a prime <= {MAX_PRIME})")


def to_scalar(value, char: int) -> Scalar:
    """Coerce an int/Fraction/str into the canonical form for ``char``."""
    if isinstance(value, str):
        value = Fraction(value)
    if char == 0:
        return Fraction(value)
    value = Fraction(value)
    den = value.denominator % char
    if den == 0:
        raise InputError(f"{value} has no image in GF({char})")
    return value.numerator * pow(den, -1, char) % char


def _inverse(c: Scalar, char: int) -> Scalar:
    if char == 0:
        return 1 / c
    return pow(c, -1, char)


class BeyondPrecision:
    """Order of a series with no known nonzero coefficient: ``>= bound``.

    Deliberately not comparable with integers.
    """

    __slots__ = ("bound",)

    def __init__(self, bound: int):
        self.bound = bound

    def __eq__(self, other):
        return isinstance(other, BeyondPrecision) and other.bound == self.bound

    def __hash__(self):
        return hash(("BeyondPrecision", self.bound))

    def __repr__(self):
        return f"BeyondPrecision({self.bound})"

    def __str__(self):
        return f">={self.bound}"


class TruncatedSeries:
    """Immutable truncated power series.

    >>> s = parse_series("t^4 + t^7", 10)
    >>> s.order()
    4
    >>> str(s / parse_series("t^4", 10))
    '1 + t^3'
    """

    __slots__ = ("_coeffs", "_truncation", "_char")

    def __init__(self, coeffs: Mapping[int, object] | Iterable[tuple[int, object]] = (),
                 truncation: int = DEFAULT_TRUNCATION, char: int = 0):
        if truncation < 0:
            raise InputError(f"negative truncation {truncation}")
        check_characteristic(char)
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[int, Scalar] = {}
        for e, c in items:
            if not isinstance(e, int) or e < 0:
                raise InputError(f"exponent must be a natural number, got {e!r}")
            if e >= truncation:
                continue
            acc[e] = acc.get(e, 0) + to_scalar(c, char)
        self._char = char
        self._truncation = truncation
        self._coeffs = _normalized(acc, char)

    @classmethod
    def _raw(cls, coeffs: dict[int, Scalar], truncation: int, char: int) -> "TruncatedSeries":
        # Trusted constructor: coefficients already canonical scalars, exponents < truncation.
        obj = object.__new__(cls)
        obj._char = char
        obj._truncation = truncation
        obj._coeffs = _normalized(coeffs, char)
        return obj

    @classmethod
    def zero(cls, truncation: int = DEFAULT_TRUNCATION, char: int = 0) -> "TruncatedSeries":
        return cls((), truncation, char)

    @classmethod
    def one(cls, truncation: int = DEFAULT_TRUNCATION, char: int = 0) -> "TruncatedSeries":
        return cls({0: 1}, truncation, char)

    @classmethod
    def monomial(cls, exponent: int, coefficient=1, truncation: int = DEFAULT_TRUNCATION,
                 char: int = 0) -> "TruncatedSeries":
        return cls({exponent: coefficient}, truncation, char)

    @property
    def truncation(self) -> int:
        return self._truncation

    @property
    def char(self) -> int:
        return self._char

    def terms(self) -> tuple[tuple[int, Scalar], ...]:
        """Nonzero ``(exponent, coefficient)`` pairs, increasing exponent."""
        return tuple(self._coeffs.items())

    def coefficient(self, exponent: int) -> Scalar:
        if exponent >= self._truncation:
            raise PrecisionError(
                f"coefficient of t^{exponent} unknown at truncation {self._truncation}")
        return self._coeffs.get(exponent, Fraction(0) if self._char == 0 else 0)

    @property
    def is_zero(self) -> bool:
        """True when no coefficient below the truncation is nonzero."""
        return not self._coeffs

    def order(self) -> int | BeyondPrecision:
        if not self._coeffs:
            return BeyondPrecision(self._truncation)
        return next(iter(self._coeffs))

    def leading_coefficient(self) -> Scalar:
        if not self._coeffs:
            raise PrecisionError("zero at precision has no leading coefficient")
        return next(iter(self._coeffs.values()))

    def monic(self) -> "TruncatedSeries":
        return self.scale(_inverse(self.leading_coefficient(), self._char))

    def truncate(self, truncation: int) -> "TruncatedSeries":
        if truncation > self._truncation:
            raise PrecisionError(
                f"cannot raise truncation from {self._truncation} to {truncation}")
        kept = {e: c for e, c in self._coeffs.items() if e < truncation}
        return TruncatedSeries._raw(kept, truncation, self._char)

    def scale(self, c) -> "TruncatedSeries":
        c = to_scalar(c, self._char)
        return TruncatedSeries._raw({e: c * v for e, v in self._coeffs.items()},
                                    self._truncation, self._char)

    def _check(self, other: "TruncatedSeries") -> None:
        if not isinstance(other, TruncatedSeries):
            raise TypeError(f"expected TruncatedSeries, got {type(other).__name__}")
        if other._char != self._char:
            raise FieldMismatchError(
                f"coefficient fields differ: characteristic {self._char} vs {other._char}")

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self + TruncatedSeries({0: other}, self._truncation, self._char)
        self._check(other)
        T = min(self._truncation, other._truncation)
        acc = {e: c for e, c in self._coeffs.items() if e < T}
        for e, c in other._coeffs.items():
            if e >= T:
                break
            acc[e] = acc.get(e, 0) + c
        return TruncatedSeries._raw(dict(sorted(acc.items())), T, self._char)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self + (-to_scalar(other, self._char))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        self._check(other)
        T = min(self._truncation, other._truncation)
        acc: dict[int, Scalar] = {}
        right = tuple(other._coeffs.items())
        for e1, c1 in self._coeffs.items():
            if e1 >= T:
                break
            for e2, c2 in right:
                e = e1 + e2
                if e >= T:
                    break
                acc[e] = acc.get(e, 0) + c1 * c2
        return TruncatedSeries._raw(dict(sorted(acc.items())), T, self._char)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(_inverse(to_scalar(other, self._char), self._char))
        return div(self, other)

    def __pow__(self, n: int):
        if n < 0:
            raise InputError("negative powers leave k[[t]]")
        result = TruncatedSeries.one(self._truncation, self._char)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self._char == other._char and self._truncation == other._truncation
                and self._coeffs == other._coeffs)

    def __hash__(self):
        return hash((self._char, self._truncation, tuple(self._coeffs.items())))

    def agrees_with(self, other: "TruncatedSeries") -> bool:
        """Equality on the coefficients both series know."""
        self._check(other)
        T = min(self._truncation, other._truncation)
        return self.truncate(T)._coeffs == other.truncate(T)._coeffs

    def __str__(self):
        return format_series(self)

    def __repr__(self):
        return f"TruncatedSeries({format_series(self)!r}, truncation={self._truncation}, char={self._char})"


def _normalized(acc: dict[int, Scalar], char: int) -> dict[int, Scalar]:
    if char:
        return {e: c % char for e, c in sorted(acc.items()) if c % char}
    return {e: Fraction(c) for e, c in sorted(acc.items()) if c}


def order(s: TruncatedSeries) -> int | BeyondPrecision:
    return s.order()


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    a._check(b)
    return a + b


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    a._check(b)
    return a * b


def div(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Quotient ``q`` with ``q * b == a``, provided it lies in ``k[[t]]``.

    Raises :class:`PrecisionError` when ``b`` is zero at its precision and
    :class:`InputError` when ``ord(b) > ord(a)``.
    """
    a._check(b)
    if b.is_zero:
        raise PrecisionError(f"division by a series that is zero to precision {b.truncation}")
    v = b.order()
    T = min(a.truncation, b.truncation) - v
    if T <= 0:
        raise PrecisionError(f"no coefficient of the quotient is known (divisor order {v}, "
                             f"truncation {min(a.truncation, b.truncation)})")
    if a.is_zero:
        if a.truncation < v:
            raise PrecisionError("dividend precision below divisor order")
        return TruncatedSeries._raw({}, T, a.char)
    if a.order() < v:
        raise InputError(f"quotient leaves k[[t]]: order {a.order()} divided by order {v}")
    char = a.char
    num = {e - v: c for e, c in a.terms()}
    unit = [(e - v, c) for e, c in b.terms()]
    inv_lead = _inverse(unit[0][1], char)
    tail = unit[1:]
    q: dict[int, Scalar] = {}
    for n in range(T):
        acc = num.get(n, 0)
        for k, u in tail:
            if k > n:
                break
            qc = q.get(n - k)
            if qc is not None:
                acc -= u * qc
        if char:
            acc %= char
        if acc:
            q[n] = acc * inv_lead % char if char else acc * inv_lead
    return TruncatedSeries._raw(q, T, char)


_TERM = re.compile(r"^(?P<coef>\d+(?:/\d+)?)?(?P<star>\*)?(?P<var>t(?:\^(?P<exp>\d+))?)?$")


def parse_series(text: str, truncation: int = DEFAULT_TRUNCATION, char: int = 0) -> TruncatedSeries:
    """Parse a literal such as ``t^4 + t^7`` or ``1/2*t^2 - t^3``."""
    src = re.sub(r"\s+", "", text).replace("**", "^")
    if not src:
        raise InputError("empty series literal")
    if src[0] not in "+-":
        src = "+" + src
    pieces = re.findall(r"([+-])([^+-]*)", src)
    if "".join(sign + body for sign, body in pieces) != src:
        raise InputError(f"malformed series literal {text!r}")
    acc: dict[int, Fraction] = {}
    for sign, body in pieces:
        m = _TERM.match(body)
        if not body or not m or not (m["coef"] or m["var"]) or (m["star"] and not (m["coef"] and m["var"])):
            raise InputError(f"malformed term {sign}{body!r} in series literal {text!r}")
        coef = Fraction(m["coef"]) if m["coef"] else Fraction(1)
        if coef.denominator == 0:
            raise InputError(f"zero denominator in {text!r}")
        exp = 0 if not m["var"] else int(m["exp"]) if m["exp"] else 1
        acc[exp] = acc.get(exp, Fraction(0)) + (coef if sign == "+" else -coef)
    return TruncatedSeries(acc, truncation, char)


def _format_coef(c: Scalar) -> str:
    return str(c)


def format_series(s: TruncatedSeries) -> str:
    """Canonical literal; exponents strictly increasing, ``0`` for zero."""
    out = []
    for e, c in s.terms():
        neg = s.char == 0 and c < 0
        mag = -c if neg else c
        if e == 0:
            body = _format_coef(mag)
        else:
            var = "t" if e == 1 else f"t^{e}"
            body = var if mag == 1 else f"{_format_coef(mag)}*{var}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out) or "0"
