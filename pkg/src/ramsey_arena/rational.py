"""Exact arithmetic for potential values: rationals extended with +infinity.

Potentials are sums of table cells and must compare exactly (no floats
anywhere).  ``ExtendedRational`` wraps :class:`fractions.Fraction` and adds a
single point at positive infinity, which absorbs addition.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

RationalLike = Union[int, Fraction, "ExtendedRational", str]


class ExtendedRational:
    """An exact rational number or +infinity."""

    __slots__ = ("_value",)

    def __init__(self, value: RationalLike = 0):
        if isinstance(value, ExtendedRational):
            self._value = value._value
        elif isinstance(value, str):
            self._value = None if value.strip() in ("inf", "+inf") else Fraction(value)
        elif value is None:
            self._value = None
        else:
            self._value = Fraction(value)

    @classmethod
    def infinity(cls) -> "ExtendedRational":
        x = cls.__new__(cls)
        x._value = None
        return x

    @property
    def is_finite(self) -> bool:
        return self._value is not None

    @property
    def finite(self) -> Fraction:
        """The underlying Fraction; raises on infinity."""
        if self._value is None:
            raise ValueError("value is infinite")
        return self._value

    def __add__(self, other: RationalLike) -> "ExtendedRational":
        other = _coerce(other)
        if self._value is None or other._value is None:
            return INF
        return ExtendedRational(self._value + other._value)

    __radd__ = __add__

    def __sub__(self, other: RationalLike) -> "ExtendedRational":
        other = _coerce(other)
        if other._value is None:
            raise ValueError("cannot subtract infinity")
        if self._value is None:
            return INF
        return ExtendedRational(self._value - other._value)

    def __mul__(self, other: RationalLike) -> "ExtendedRational":
        other = _coerce(other)
        if self._value is None or other._value is None:
            if (self._value is not None and self._value == 0) or (
                other._value is not None and other._value == 0
            ):
                raise ValueError("0 * infinity is undefined")
            return INF
        return ExtendedRational(self._value * other._value)

    __rmul__ = __mul__

    def _cmp_key(self):
        # (1,) sorts after every finite (0, q)
        return (1,) if self._value is None else (0, self._value)

    def __eq__(self, other) -> bool:
        try:
            other = _coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self._value == other._value

    def __lt__(self, other) -> bool:
        return self._cmp_key() < _coerce(other)._cmp_key()

    def __le__(self, other) -> bool:
        return self._cmp_key() <= _coerce(other)._cmp_key()

    def __gt__(self, other) -> bool:
        return self._cmp_key() > _coerce(other)._cmp_key()

    def __ge__(self, other) -> bool:
        return self._cmp_key() >= _coerce(other)._cmp_key()

    def __hash__(self) -> int:
        return hash(self._value)

    def __str__(self) -> str:
        return "inf" if self._value is None else str(self._value)

    def __repr__(self) -> str:
        return f"ExtendedRational({str(self)!r})"


def _coerce(value: RationalLike) -> ExtendedRational:
    return value if isinstance(value, ExtendedRational) else ExtendedRational(value)


INF = ExtendedRational.infinity()


def format_rational(q: Fraction) -> str:
    """Serialize exactly, `p` or `p/q`."""
    return str(q)


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())
