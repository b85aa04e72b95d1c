"""From a quadruple A^4 + h B^4 = C^4 + h D^4 to an n-term biquadrate identity.

Write h as a signed sum of fourth powers, h = sum(s_i * w_i * h_i^4).  Substituting
into the quadruple equation and moving every negative term to the other side
gives

    A^4 + sum_{s_i>0} w_i (h_i B)^4 + sum_{s_i<0} w_i (h_i D)^4
  = C^4 + sum_{s_i>0} w_i (h_i D)^4 + sum_{s_i<0} w_i (h_i B)^4,

which is cleared to a primitive integer identity.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Any, NamedTuple, Optional, Sequence

from .errors import DomainError, InconsistentWeights, TrivialIdentity
from .numeric import clear_to_primitive, format_rational, parse_rational


@dataclass(frozen=True)
class Term:
    sign: int
    weight: int
    base: Fraction

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise DomainError(f"term sign must be +1 or -1, got {self.sign}")
        if self.weight < 1:
            raise DomainError(f"term weight must be >= 1, got {self.weight}")
        if self.base == 0:
            raise DomainError("term base must be nonzero")
        object.__setattr__(self, "base", abs(Fraction(self.base)))

    @property
    def value(self) -> Fraction:
        return self.sign * self.weight * self.base**4

    def to_record(self) -> str:
        return f"{'+' if self.sign > 0 else '-'}{self.weight}*{format_rational(self.base)}^4"


def canonical_order(terms: Sequence[Term]) -> tuple[Term, ...]:
    """Ascending by base; in mixed-sign sums the largest positive term leads."""
    ordered = sorted(terms, key=lambda t: (t.base, t.sign < 0, t.weight))
    signs = {t.sign for t in ordered}
    if len(signs) == 2:
        lead = max((t for t in ordered if t.sign > 0), key=lambda t: t.base)
        ordered.remove(lead)
        ordered.insert(0, lead)
    return tuple(ordered)


@dataclass(frozen=True)
class Decomposition:
    """h written as sum(sign * weight * base^4); terms keep their given order."""

    h: Fraction
    terms: tuple[Term, ...]

    def __post_init__(self):
        object.__setattr__(self, "h", Fraction(self.h))
        object.__setattr__(self, "terms", tuple(self.terms))
        if not self.terms:
            raise DomainError("a decomposition needs at least one term")
        if self.value != self.h:
            raise InconsistentWeights(f"terms sum to {self.value}, not h={self.h}")

    @property
    def value(self) -> Fraction:
        return sum((t.value for t in self.terms), Fraction(0))

    @property
    def n(self) -> int:
        return len(self.terms) + 1

    @property
    def denominator(self) -> int:
        return reduce(lcm, (t.base.denominator for t in self.terms))

    @property
    def weighted(self) -> bool:
        return any(t.weight != 1 for t in self.terms)

    @classmethod
    def of(cls, h, signed_bases: Sequence, weights: Optional[Sequence[int]] = None) -> "Decomposition":
        """Build from signed bases, e.g. ``Decomposition.of(23, [F(5,2), -F(1,2), -2])``."""
        weights = weights or [1] * len(signed_bases)
        terms = [Term(1 if b > 0 else -1, w, abs(Fraction(b))) for b, w in zip(signed_bases, weights)]
        return cls(h, tuple(terms))

    def to_record(self) -> list[str]:
        return [t.to_record() for t in self.terms]

    @classmethod
    def from_record(cls, h, items: Sequence[str]) -> "Decomposition":
        terms = [_parse_record_term(item) for item in items]
        return cls(h, tuple(terms))

    def __str__(self):
        """Integer-numerator form over the shared denominator: (7^4+1^4-3^4)/2^4."""
        d = self.denominator
        parts = []
        for i, t in enumerate(self.terms):
            sign = "-" if t.sign < 0 else ("+" if i else "")
            w = f"{t.weight}*" if t.weight != 1 else ""
            parts.append(f"{sign}{w}{int(t.base * d)}^4")
        body = "".join(parts)
        if d == 1:
            return body
        return f"({body})/{d}^4"

    @classmethod
    def parse(cls, text: str, h=None) -> "Decomposition":
        """Parse ``(7^4+1^4-3^4)/2^4``, ``2*1^4+3*1^4``, or a comma list of record terms."""
        text = text.replace(" ", "")
        if "," in text:
            parsed = [_parse_record_term(item) for item in text.split(",")]
        else:
            m = _PAPER_FORM_RE.match(text)
            if not m:
                raise DomainError(f"cannot parse decomposition {text!r}")
            body = m.group("body1") or m.group("body2")
            d = int(m.group("den") or 1)
            if d == 0:
                raise DomainError("zero denominator in decomposition")
            parsed = []
            pos = 0
            for tm in _PAPER_TERM_RE.finditer(body):
                if tm.start() != pos:
                    raise DomainError(f"cannot parse decomposition {text!r}")
                pos = tm.end()
                sign, weight, num = tm.groups()
                parsed.append(Term(-1 if sign == "-" else 1, int(weight or 1), Fraction(int(num), d)))
            if pos != len(body) or not parsed:
                raise DomainError(f"cannot parse decomposition {text!r}")
        value = sum((t.value for t in parsed), Fraction(0))
        return cls(value if h is None else h, tuple(parsed))


_RECORD_TERM_RE = re.compile(r"^([+-])(\d+)\*(\d+(?:/\d+)?)\^(\d+)$")


def _parse_record_term(item: str) -> Term:
    m = _RECORD_TERM_RE.match(item.strip())
    if not m:
        raise DomainError(f"bad decomposition term {item!r}")
    sign, weight, base, exp = m.groups()
    if int(exp) != 4:
        raise InconsistentWeights(f"term {item!r} is not a fourth power")
    return Term(-1 if sign == "-" else 1, int(weight), parse_rational(base))


_PAPER_FORM_RE = re.compile(r"^(?:\((?P<body1>[^()]+)\)/(?P<den>\d+)\^4|(?P<body2>[^()/]+))$")
_PAPER_TERM_RE = re.compile(r"([+-]?)(?:(\d+)\*)?(\d+)\^4")


# -- decomposition search -------------------------------------------------------


def decompose(h, n: int, search_bound: int) -> list[Decomposition]:
    """All ways to write h as n-1 signed fourth powers c_i^4 / d^4.

    Numerators are distinct integers in [1, search_bound], d <= search_bound and
    gcd(d, c_1, ..., c_{n-1}) = 1.  Ordered by d, then by the ascending tuple
    of numerators, then by sign pattern (+ before -).
    """
    if n < 2:
        raise DomainError("n must be >= 2")
    h = Fraction(h)
    count = n - 1
    found = []
    fourth = [c**4 for c in range(search_bound + 1)]
    # prefix[c] = sum of fourth powers 1..c, used as an upper bound on what the
    # remaining terms below c can contribute
    prefix = [0]
    for c in range(1, search_bound + 1):
        prefix.append(prefix[-1] + fourth[c])

    def best(c_below, r):
        # largest sum of r distinct fourth powers with bases < c_below
        top = c_below - 1
        return prefix[top] - prefix[max(0, top - r)]

    for d in range(1, search_bound + 1):
        target = h * d**4
        if target.denominator != 1:
            continue
        target = int(target)
        chosen: list[int] = []

        def dfs(remaining, below, left):
            if left == 0:
                if remaining == 0:
                    found.append((d, tuple(chosen)))
                return
            if below - 1 < left or abs(remaining) > best(below, left):
                return
            for c in range(below - 1, left - 1, -1):
                if abs(remaining) > fourth[c] + best(c, left - 1):
                    # every smaller c can reach even less
                    break
                for s in (1, -1):
                    chosen.append(s * c)
                    dfs(remaining - s * fourth[c], c, left - 1)
                    chosen.pop()

        dfs(target, search_bound + 1, count)

    results = []
    for d, signed in found:
        if reduce(gcd, (abs(c) for c in signed), d) != 1:
            continue
        results.append((d, signed))

    def key(item):
        d, signed = item
        asc = sorted(signed, key=abs)
        return d, tuple(abs(c) for c in asc), tuple(c < 0 for c in asc)

    results.sort(key=key)
    out = []
    for d, signed in results:
        terms = [Term(1 if c > 0 else -1, 1, Fraction(abs(c), d)) for c in signed]
        out.append(Decomposition(h, canonical_order(terms)))
    return out


# -- identities -----------------------------------------------------------------


class Verdict(NamedTuple):
    valid: bool
    nontrivial: bool


def _pairs(values, weights):
    if weights is None:
        return [(1, v) for v in values]
    return list(zip(weights, values))


def verify_identity(left: Sequence[int], right: Sequence[int], weights=None) -> Verdict:
    """Exact check of sum(w * x^4) on both sides.

    ``weights`` is None or a pair (left_weights, right_weights).
    """
    if len(left) != len(right):
        raise DomainError(f"side lengths differ: {len(left)} vs {len(right)}")
    lw, rw = weights if weights is not None else (None, None)
    if lw is not None and len(lw) != len(left) or rw is not None and len(rw) != len(right):
        raise DomainError("weight list length does not match its side")
    lp, rp = _pairs(left, lw), _pairs(right, rw)
    valid = sum(w * x**4 for w, x in lp) == sum(w * x**4 for w, x in rp)
    nontrivial = Counter((w, abs(x)) for w, x in lp) != Counter((w, abs(x)) for w, x in rp)
    return Verdict(valid, nontrivial)


def format_side(values: Sequence[int], weights: Optional[Sequence[int]] = None) -> str:
    weights = weights or [1] * len(values)
    return "+".join(f"{w}*{x}^4" if w != 1 else f"{x}^4" for w, x in zip(weights, values))


@dataclass(frozen=True)
class Identity:
    left: tuple[int, ...]
    right: tuple[int, ...]
    left_weights: Optional[tuple[int, ...]] = None
    right_weights: Optional[tuple[int, ...]] = None
    h: Optional[Fraction] = None
    decomposition: Optional[Decomposition] = None
    cancelled: bool = False
    provenance: dict[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        verdict = verify_identity(self.left, self.right, self.weights)
        if not verdict.valid:
            raise DomainError(f"identity does not balance: {self.line}")
        if not verdict.nontrivial:
            raise TrivialIdentity(f"both sides coincide: {self.line}")

    @property
    def weights(self):
        if self.left_weights is None and self.right_weights is None:
            return None
        return (self.left_weights or (1,) * len(self.left), self.right_weights or (1,) * len(self.right))

    @property
    def weighted(self) -> bool:
        return self.weights is not None

    @property
    def line(self) -> str:
        return format_side(self.left, self.left_weights) + "=" + format_side(self.right, self.right_weights)

    def __str__(self):
        return self.line

    def scaled(self, factor: int) -> "Identity":
        """Same identity with every base multiplied by ``factor``."""
        return Identity(
            tuple(x * factor for x in self.left),
            tuple(x * factor for x in self.right),
            self.left_weights,
            self.right_weights,
            self.h,
            self.decomposition,
            self.cancelled,
            dict(self.provenance),
        )


def _cancel(left, right):
    """Drop (weight, base) pairs present on both sides; multiset semantics."""
    pool = Counter(right)
    kept_left = []
    for item in left:
        if pool[item]:
            pool[item] -= 1
        else:
            kept_left.append(item)
    removed = Counter(right) - pool
    kept_right = []
    for item in right:
        if removed[item]:
            removed[item] -= 1
        else:
            kept_right.append(item)
    return sorted(kept_left, key=lambda p: (p[1], p[0])), sorted(kept_right, key=lambda p: (p[1], p[0]))


def _expand(quadruple, dec: Decomposition, cancel: bool, weighted: bool) -> Identity:
    h = Fraction(quadruple.h)
    if dec.value != h:
        raise InconsistentWeights(f"decomposition sums to {dec.value}, quadruple has h={h}")
    A, B, C, D = quadruple.raw
    pos = [t for t in dec.terms if t.sign > 0]
    neg = [t for t in dec.terms if t.sign < 0]
    left = [(1, A)] + [(t.weight, t.base * B) for t in pos] + [(t.weight, t.base * D) for t in neg]
    right = [(1, C)] + [(t.weight, t.base * D) for t in pos] + [(t.weight, t.base * B) for t in neg]

    ints = clear_to_primitive([x for _, x in left + right])
    ints = [abs(v) for v in ints]
    left = [(w, x) for (w, _), x in zip(left, ints[: len(left)])]
    right = [(w, x) for (w, _), x in zip(right, ints[len(left):])]
    if 0 in ints:
        raise TrivialIdentity("expansion produced a zero term")

    if cancel:
        left, right = _cancel(left, right)
        if not left:
            raise TrivialIdentity("every term cancelled")
        g = reduce(gcd, (x for _, x in left + right))
        left = [(w, x // g) for w, x in left]
        right = [(w, x // g) for w, x in right]

    lw = tuple(w for w, _ in left) if weighted else None
    rw = tuple(w for w, _ in right) if weighted else None
    provenance = dict(getattr(quadruple, "provenance", {}) or {})
    return Identity(
        tuple(x for _, x in left),
        tuple(x for _, x in right),
        lw,
        rw,
        h=h,
        decomposition=dec,
        cancelled=cancel,
        provenance=provenance,
    )


def expand_identity(quadruple, dec: Decomposition, cancel: bool = False) -> Identity:
    if dec.weighted:
        raise DomainError("weighted decomposition; use expand_weighted")
    return _expand(quadruple, dec, cancel, weighted=False)


def expand_weighted(quadruple, dec: Decomposition, cancel: bool = False) -> Identity:
    """Like expand_identity but keeps per-term weights (A and C carry weight 1)."""
    return _expand(quadruple, dec, cancel, weighted=dec.weighted)

