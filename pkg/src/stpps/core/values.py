"""Exact scalar values with one infinitesimal tier.

A ``Value`` is a pair ``base + eps_card * ε`` where ``ε`` is a positive
infinitesimal.  Ordering is lexicographic, so the tier only decides between
values whose bases are equal.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union

from .errors import InvalidInput

Scalar = Union[int, Fraction]


def as_fraction(x: object) -> Fraction:
    """Convert an exact rational (int, Fraction, "p/q" string) to Fraction.

    Floats are refused so that no rounding sneaks into a correctness path.
    """
    if isinstance(x, bool):
        raise InvalidInput("booleans are not values")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise InvalidInput(f"not a rational number: {x!r}") from None
    raise InvalidInput(f"expected an exact rational, got {type(x).__name__}")


class Value:
    """Element of the ordered group Q + Q·ε."""

    __slots__ = ("base", "eps_card")

    def __init__(self, base: object = 0, eps_card: object = 0) -> None:
        self.base = as_fraction(base)
        self.eps_card = as_fraction(eps_card)

    @classmethod
    def of(cls, x: object) -> Value:
        return x if isinstance(x, Value) else cls(x)

    @property
    def has_tier(self) -> bool:
        return self.eps_card != 0

    def _key(self) -> tuple[Fraction, Fraction]:
        return (self.base, self.eps_card)

    def __add__(self, other: object) -> Value:
        if isinstance(other, Value):
            return Value(self.base + other.base, self.eps_card + other.eps_card)
        return Value(self.base + as_fraction(other), self.eps_card)

    __radd__ = __add__

    def __sub__(self, other: object) -> Value:
        if isinstance(other, Value):
            return Value(self.base - other.base, self.eps_card - other.eps_card)
        return Value(self.base - as_fraction(other), self.eps_card)

    def __rsub__(self, other: object) -> Value:
        return Value(as_fraction(other) - self.base, -self.eps_card)

    def __neg__(self) -> Value:
        return Value(-self.base, -self.eps_card)

    def __mul__(self, k: object) -> Value:
        if isinstance(k, Value):
            raise TypeError("values can only be scaled by rationals")
        k = as_fraction(k)
        return Value(self.base * k, self.eps_card * k)

    __rmul__ = __mul__

    def __truediv__(self, k: object) -> Value:
        k = as_fraction(k)
        return Value(self.base / k, self.eps_card / k)

    def _cmp_key(self, other: object) -> tuple[Fraction, Fraction]:
        if isinstance(other, Value):
            return other._key()
        return (as_fraction(other), Fraction(0))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, str):
            return NotImplemented
        try:
            return self._key() == self._cmp_key(other)
        except InvalidInput:
            return NotImplemented

    def __lt__(self, other: object) -> bool:
        return self._key() < self._cmp_key(other)

    def __le__(self, other: object) -> bool:
        return self._key() <= self._cmp_key(other)

    def __gt__(self, other: object) -> bool:
        return self._key() > self._cmp_key(other)

    def __ge__(self, other: object) -> bool:
        return self._key() >= self._cmp_key(other)

    def __hash__(self) -> int:
        if self.eps_card == 0:
            return hash(self.base)
        return hash(self._key())

    def __repr__(self) -> str:
        if self.eps_card == 0:
            return f"Value({self.base})"
        return f"Value({self.base}, {self.eps_card})"

    def __str__(self) -> str:
        if self.eps_card == 0:
            return str(self.base)
        sign = "+" if self.eps_card > 0 else "-"
        return f"{self.base}{sign}{abs(self.eps_card)}ε"

    def rational(self) -> Fraction:
        """Return the base, refusing if the tier is nonzero."""
        if self.eps_card != 0:
            raise InvalidInput(f"{self} carries an infinitesimal tier")
        return self.base


ZERO = Value(0)
