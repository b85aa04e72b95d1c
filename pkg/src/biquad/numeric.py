"""Exact integer/rational helpers.

Python's ``int`` and ``fractions.Fraction`` already give arbitrary precision and
canonical reduced storage, so they are the integer and rational types of the
whole package.  This module adds the few predicates the pipeline needs and the
text format used by every external file ("num/den", denominator dropped when 1).
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from math import gcd, isqrt, lcm
from typing import Iterable, Iterator, Optional

from .errors import DomainError

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")

# residues mod 64 that squares can take; rejects ~80% of candidates cheaply
_SQUARE_RES_64 = frozenset((i * i) % 64 for i in range(64))


def is_perfect_square(v: int) -> Optional[int]:
    """Return ``r >= 0`` with ``r*r == v``, or None."""
    if v < 0:
        return None
    if (v & 63) not in _SQUARE_RES_64:
        return None
    r = isqrt(v)
    return r if r * r == v else None


def integer_fourth_root(v: int) -> Optional[int]:
    if v < 0:
        raise DomainError(f"fourth root of negative value {v}")
    r = is_perfect_square(v)
    if r is None:
        return None
    return is_perfect_square(r)


def rational_fourth_root(v: Fraction) -> Optional[Fraction]:
    """Non-negative rational t with t**4 == v, if one exists."""
    v = Fraction(v)
    if v < 0:
        return None
    n = integer_fourth_root(v.numerator)
    d = integer_fourth_root(v.denominator)
    if n is None or d is None:
        return None
    return Fraction(n, d)


def lcm_of_denominators(values: Iterable[Fraction]) -> int:
    dens = [Fraction(v).denominator for v in values]
    if not dens:
        raise DomainError("lcm_of_denominators needs at least one value")
    return reduce(lcm, dens)


def clear_to_primitive(values: Iterable[Fraction]) -> list[int]:
    """Scale rationals to integers with gcd 1, keeping signs.

    The common scale is positive, so the ratios (and signs) between entries are
    preserved exactly.
    """
    values = [Fraction(v) for v in values]
    scale = lcm_of_denominators(values)
    ints = [int(v * scale) for v in values]
    g = reduce(gcd, ints, 0)
    if g == 0:
        raise DomainError("cannot normalise an all-zero vector")
    return [i // g for i in ints]


def parse_rational(text: str) -> Fraction:
    """Parse ``"num"`` or ``"num/den"``; no decimals, no exponents."""
    m = _RATIONAL_RE.match(text)
    if not m:
        raise DomainError(f"not a rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise DomainError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(v: Fraction) -> str:
    return str(Fraction(v))


def small_height_rationals() -> Iterator[Fraction]:
    """Positive rationals by increasing height: 1, 2, 1/2, 3, 1/3, 3/2, 2/3, 4, ...

    Within height H the order is H/1, 1/H, then H/k, k/H for k = H-1 down to 2
    with gcd(H, k) = 1.
    """
    yield Fraction(1)
    height = 2
    while True:
        yield Fraction(height)
        yield Fraction(1, height)
        for k in range(height - 1, 1, -1):
            if gcd(height, k) == 1:
                yield Fraction(height, k)
                yield Fraction(k, height)
        height += 1
