"""JSON Lines catalog of identities.

One record per line.  Every numeric field is a decimal string (values exceed
64 bits), rationals are reduced "num/den".  A record re-verifies on load: the
identity must balance and be nontrivial, the decomposition must sum to h, and
when the generating point is recorded the identity is re-derived from it.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterator, Optional

from .compose import Decomposition, Identity, expand_weighted, format_side, verify_identity
from .curve import CurvePoint, build_curve, on_curve, scalar_mul
from .errors import BiquadError, DomainError
from .numeric import format_rational

_INT_RE = re.compile(r"^-?\d+$")
_RAT_RE = re.compile(r"^-?\d+(/\d+)?$")
_DEC_TERM_RE = re.compile(r"^[+-]\d+\*\d+(/\d+)?\^\d+$")
_LINE_TERM_RE = re.compile(r"^(?:(\d+)\*)?(\d+)\^(\d+)$")


class RecordParseError(BiquadError):
    def __init__(self, lineno, message):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}")


class InvalidRecord(BiquadError):
    """Well-formed record whose values are impossible (e.g. a zero denominator)."""

    def __init__(self, lineno, message):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}")


@dataclass(frozen=True)
class PointRef:
    """Where an identity came from: generator * multiple on E(h t^4)."""

    generator: tuple[Fraction, Fraction]
    multiple: int
    t: Fraction
    x: Fraction
    y: Fraction


@dataclass(frozen=True)
class IdentityRecord:
    n: int
    h: Fraction
    decomposition: tuple[str, ...]
    left: tuple[int, ...]
    right: tuple[int, ...]
    cancelled: bool = False
    weighted: bool = False
    left_weights: Optional[tuple[int, ...]] = None
    right_weights: Optional[tuple[int, ...]] = None
    point: Optional[PointRef] = None

    @property
    def line(self) -> str:
        return format_side(self.left, self.left_weights) + "=" + format_side(self.right, self.right_weights)

    def to_json(self) -> dict:
        out = {
            "n": str(self.n),
            "h": format_rational(self.h),
            "decomposition": list(self.decomposition),
        }
        if self.point is not None:
            p = self.point
            out["point"] = {
                "X": format_rational(p.x),
                "Y": format_rational(p.y),
                "multiple": str(p.multiple),
                "generator": [format_rational(p.generator[0]), format_rational(p.generator[1])],
                "t": format_rational(p.t),
            }
        out["left"] = [str(v) for v in self.left]
        out["right"] = [str(v) for v in self.right]
        if self.weighted:
            out["weights"] = {
                "left": [str(w) for w in self.left_weights],
                "right": [str(w) for w in self.right_weights],
            }
        out["flags"] = {"cancelled": self.cancelled, "weighted": self.weighted}
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(", ", ": "))

    @classmethod
    def from_json(cls, obj, lineno: int = 0) -> "IdentityRecord":
        def need(container, key, kind):
            if not isinstance(container, dict) or key not in container:
                raise RecordParseError(lineno, f"missing field {key!r}")
            value = container[key]
            if not isinstance(value, kind):
                raise RecordParseError(lineno, f"field {key!r} has the wrong type")
            return value

        def ints(values, what):
            if not isinstance(values, list) or not all(isinstance(v, str) and _INT_RE.match(v) for v in values):
                raise RecordParseError(lineno, f"{what} must be a list of decimal strings")
            return tuple(int(v) for v in values)

        def rat(text, what):
            if not isinstance(text, str) or not _RAT_RE.match(text):
                raise RecordParseError(lineno, f"{what} is not a rational string")
            num, _, den = text.partition("/")
            if den and int(den) == 0:
                raise InvalidRecord(lineno, f"{what} has a zero denominator")
            return Fraction(int(num), int(den or 1))

        n_text = need(obj, "n", str)
        if not _INT_RE.match(n_text):
            raise RecordParseError(lineno, "n is not an integer string")
        h = rat(need(obj, "h", str), "h")
        dec = need(obj, "decomposition", list)
        if not all(isinstance(d, str) and _DEC_TERM_RE.match(d) for d in dec):
            raise RecordParseError(lineno, "decomposition terms must look like '+w*num/den^4'")
        left = ints(need(obj, "left", list), "left")
        right = ints(need(obj, "right", list), "right")
        flags = need(obj, "flags", dict)
        cancelled = need(flags, "cancelled", bool)
        weighted = need(flags, "weighted", bool)
        lw = rw = None
        if weighted:
            weights = need(obj, "weights", dict)
            lw = ints(need(weights, "left", list), "weights.left")
            rw = ints(need(weights, "right", list), "weights.right")
        point = None
        if "point" in obj:
            p = need(obj, "point", dict)
            gen = need(p, "generator", list)
            if len(gen) != 2:
                raise RecordParseError(lineno, "generator must be an [X, Y] pair")
            mult = need(p, "multiple", str)
            if not _INT_RE.match(mult):
                raise RecordParseError(lineno, "multiple is not an integer string")
            point = PointRef(
                generator=(rat(gen[0], "generator X"), rat(gen[1], "generator Y")),
                multiple=int(mult),
                t=rat(need(p, "t", str), "t"),
                x=rat(need(p, "X", str), "X"),
                y=rat(need(p, "Y", str), "Y"),
            )
        return cls(
            n=int(n_text),
            h=h,
            decomposition=tuple(dec),
            left=left,
            right=right,
            cancelled=cancelled,
            weighted=weighted,
            left_weights=lw,
            right_weights=rw,
            point=point,
        )

    @classmethod
    def from_identity(cls, identity: Identity, scale: int = 1) -> "IdentityRecord":
        """Record for an expanded identity; ``scale`` multiplies every base."""
        if identity.decomposition is None or identity.h is None:
            raise DomainError("identity lacks the decomposition/h needed for a record")
        prov = identity.provenance
        point = None
        if "generator" in prov:
            gen = prov["generator"]
            pt = prov["point"]
            point = PointRef((gen.x, gen.y), prov["multiple"], Fraction(prov.get("t", 1)), pt.x, pt.y)
        weights = identity.weights
        return cls(
            n=identity.decomposition.n,
            h=identity.h,
            decomposition=tuple(identity.decomposition.to_record()),
            left=tuple(v * scale for v in identity.left),
            right=tuple(v * scale for v in identity.right),
            cancelled=identity.cancelled,
            weighted=weights is not None,
            left_weights=weights[0] if weights else None,
            right_weights=weights[1] if weights else None,
            point=point,
        )


@dataclass
class RecordVerdict:
    valid: bool
    nontrivial: bool
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.valid and self.nontrivial


def verify_record(rec: IdentityRecord) -> RecordVerdict:
    problems = []
    try:
        verdict = verify_identity(
            rec.left, rec.right, (rec.left_weights, rec.right_weights) if rec.weighted else None
        )
    except DomainError as exc:
        return RecordVerdict(False, False, [str(exc)])
    if not verdict.valid:
        problems.append("sides do not balance")
    if not verdict.nontrivial:
        problems.append("sides coincide as multisets")
    if any(v <= 0 for v in rec.left + rec.right):
        problems.append("terms must be positive")
    if rec.weighted and any(w <= 0 for w in rec.left_weights + rec.right_weights):
        problems.append("weights must be positive")

    dec = None
    try:
        dec = Decomposition.from_record(rec.h, rec.decomposition)
    except (BiquadError, ValueError, ZeroDivisionError) as exc:
        problems.append(f"decomposition: {exc}")
    if dec is not None:
        if rec.n != dec.n:
            problems.append(f"n={rec.n} but the decomposition has {len(dec.terms)} terms")
        if not rec.cancelled and len(rec.left) != rec.n:
            problems.append(f"expected {rec.n} terms per side, found {len(rec.left)}")
        if rec.weighted != dec.weighted:
            problems.append("weighted flag disagrees with the decomposition")
        if rec.point is not None:
            problems.extend(_check_provenance(rec, dec))

    valid = verdict.valid and not problems
    return RecordVerdict(valid, verdict.nontrivial, problems)


def _check_provenance(rec: IdentityRecord, dec: Decomposition) -> list[str]:
    from .derive import solve_with_scaling

    p = rec.point
    try:
        ctx = build_curve(rec.h * p.t**4)
        gen = CurvePoint(*p.generator)
        if not on_curve(ctx, gen):
            return [f"generator {gen} is not on {ctx}"]
        pt = scalar_mul(ctx, p.multiple, gen)
        if pt != CurvePoint(p.x, p.y):
            return [f"{p.multiple}*generator is {pt}, record says ({p.x}, {p.y})"]
        quad = solve_with_scaling(rec.h, p.t, pt)
        again = expand_weighted(quad, dec, cancel=rec.cancelled)
    except (BiquadError, ZeroDivisionError) as exc:
        return [f"cannot re-derive from the recorded point: {exc}"]
    if len(again.left) != len(rec.left) or len(again.right) != len(rec.right):
        return ["re-derived identity has a different shape"]
    # stored terms may carry a common factor; anything else is a mismatch
    scale = Fraction(rec.left[0], again.left[0])
    if scale.denominator != 1 or scale <= 0:
        return ["re-derived identity differs from the stored terms"]
    if tuple(v * scale for v in again.left) != rec.left or tuple(v * scale for v in again.right) != rec.right:
        return ["re-derived identity differs from the stored terms"]
    return []


# -- equation lines ---------------------------------------------------------------


def parse_equation_line(text: str, lineno: int = 0):
    """``a^4+2*b^4=c^4+2*d^4`` -> (left, right, weights-or-None, exponents-ok)."""
    text = text.replace(" ", "")
    if text.count("=") != 1:
        raise RecordParseError(lineno, "equation needs exactly one '='")
    sides = []
    exps_ok = True
    any_weight = False
    for side in text.split("="):
        vals, ws = [], []
        for term in side.split("+"):
            m = _LINE_TERM_RE.match(term)
            if not m:
                raise RecordParseError(lineno, f"bad term {term!r}")
            w, base, exp = m.groups()
            any_weight |= w is not None
            ws.append(int(w or 1))
            vals.append(int(base))
            exps_ok &= int(exp) == 4
        sides.append((tuple(vals), tuple(ws)))
    (left, lw), (right, rw) = sides
    return left, right, ((lw, rw) if any_weight else None), exps_ok


# -- files ------------------------------------------------------------------------


def iter_catalog(path) -> Iterator[tuple[int, object]]:
    """Yield (lineno, item) per non-blank, non-'#' line.

    ``item`` is an IdentityRecord, a parsed equation tuple, or an InvalidRecord
    for records whose values are impossible.  Malformed lines raise
    RecordParseError.
    """
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("{"):
                try:
                    obj = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise RecordParseError(lineno, f"invalid JSON: {exc.msg}") from exc
                try:
                    yield lineno, IdentityRecord.from_json(obj, lineno)
                except InvalidRecord as exc:
                    yield lineno, exc
            else:
                yield lineno, parse_equation_line(line, lineno)


def read_catalog(path) -> list[IdentityRecord]:
    return [item for _, item in iter_catalog(path) if isinstance(item, IdentityRecord)]


def append_record(path, record: IdentityRecord) -> None:
    path = Path(path)
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(record.dumps() + "\n")


def write_catalog(path, records) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(rec.dumps() + "\n")


def verify_equation(parsed) -> RecordVerdict:
    left, right, weights, exps_ok = parsed
    try:
        verdict = verify_identity(left, right, weights)
    except DomainError as exc:
        return RecordVerdict(False, False, [str(exc)])
    problems = [] if exps_ok else ["every term must be a fourth power"]
    if not verdict.valid:
        problems.append("sides do not balance")
    if not verdict.nontrivial:
        problems.append("sides coincide as multisets")
    return RecordVerdict(verdict.valid and exps_ok, verdict.nontrivial, problems)
