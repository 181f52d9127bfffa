"""Exact rational points and squared Euclidean distances.

Scalars are :class:`fractions.Fraction`; a point is a tuple of Fractions.
Distances are never square-rooted: every comparison against a radius is
made between squared quantities.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Iterable, Sequence, Tuple, Union

Rational = Fraction
Point = Tuple[Fraction, ...]

RationalLike = Union[Fraction, int, str]


class Ordering(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def as_rational(value: RationalLike) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected: they would silently bring rounding into exact paths.
    """
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact rationals")
    return Fraction(value)


def make_point(coords: Iterable[RationalLike]) -> Point:
    return tuple(as_rational(c) for c in coords)


def squared_distance(p: Sequence[Fraction], q: Sequence[Fraction]) -> Fraction:
    """Return sum_i (p[i] - q[i])**2 exactly."""
    if len(p) != len(q):
        raise ValueError(f"dimension mismatch: {len(p)} != {len(q)}")
    total = Fraction(0)
    for a, b in zip(p, q):
        diff = a - b
        total += diff * diff
    return total


def compare(value: Fraction, other: Fraction) -> Ordering:
    if value < other:
        return Ordering.LESS
    if value > other:
        return Ordering.GREATER
    return Ordering.EQUAL


def cmp_sq_dist(p: Sequence[Fraction], q: Sequence[Fraction], threshold: RationalLike) -> Ordering:
    """Order dist(p, q) against ``threshold`` by comparing squares."""
    threshold = as_rational(threshold)
    if threshold < 0:
        raise ValueError(f"threshold must be non-negative, got {threshold}")
    return compare(squared_distance(p, q), threshold * threshold)


def add(p: Sequence[Fraction], q: Sequence[Fraction]) -> Point:
    if len(p) != len(q):
        raise ValueError(f"dimension mismatch: {len(p)} != {len(q)}")
    return tuple(a + b for a, b in zip(p, q))


def scale(c: RationalLike, p: Sequence[Fraction]) -> Point:
    c = as_rational(c)
    return tuple(c * a for a in p)


def unit(d: int, axis: int) -> Point:
    """Unit vector along ``axis`` (1-based, matching grid coordinates)."""
    if not 1 <= axis <= d:
        raise ValueError(f"axis {axis} outside [1, {d}]")
    return tuple(Fraction(int(j == axis - 1)) for j in range(d))


def rational_to_str(value: Fraction) -> str:
    # Fraction is always normalised, so this is lowest terms with den > 0.
    return f"{value.numerator}/{value.denominator}"


def rational_from_str(text: str) -> Fraction:
    num, sep, den = text.partition("/")
    if not sep:
        raise ValueError(f"expected 'numerator/denominator', got {text!r}")
    value = Fraction(int(num), int(den))
    if int(den) <= 0 or rational_to_str(value) != text.strip():
        raise ValueError(f"rational {text!r} is not in lowest terms with positive denominator")
    return value


def approx(p: Sequence[Fraction]) -> list:
    """Lossy float view of a point, for display and plotting only."""
    return [float(c) for c in p]
