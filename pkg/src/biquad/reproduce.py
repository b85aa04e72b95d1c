"""Regenerate the published worked examples from their generators and compare."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Iterable, Optional

from .catalog import IdentityRecord
from .compose import Decomposition, expand_weighted
from .curve import CurvePoint, build_curve, on_curve, scalar_mul
from .derive import pmq_to_quadruple, point_to_pmq
from .errors import BiquadError
from .numeric import parse_rational
from .pointsearch import GeneratorRegistry


@dataclass
class Check:
    example: int
    h: Fraction
    name: str
    ok: bool
    detail: str = ""


def load_examples(path=None) -> list[dict]:
    if path is None:
        path = resources.files("biquad") / "data" / "worked_examples.json"
    with open(str(path), encoding="utf-8") as fh:
        return json.load(fh)


def _pt(pair) -> CurvePoint:
    return CurvePoint(parse_rational(pair[0]), parse_rational(pair[1]))


def run_case(case: dict, registry: GeneratorRegistry, records: Optional[list] = None) -> list[Check]:
    ex = case["example"]
    h = parse_rational(case["h"])
    checks = []

    def check(name, ok, detail=""):
        checks.append(Check(ex, h, name, bool(ok), detail))
        return ok

    ctx = build_curve(h)
    printed = tuple(parse_rational(c) for c in case["curve"])
    check("curve", (ctx.F, ctx.G, ctx.H) == printed, f"built {ctx}")

    printed_gens = [_pt(g) for g in case["generators"]]
    gens = registry.get(h)
    if not check("registry", gens == printed_gens, f"registry has {[str(g) for g in gens]}"):
        return checks
    for i, g in enumerate(gens):
        check(f"generator {i + 1} on curve", on_curve(ctx, g), str(g))

    dec = Decomposition.parse(case["decomposition"], h)
    scale = case.get("printed_scale", 1)
    for spec in case["points"]:
        n = spec["multiple"]
        gi = spec["generator"]
        label = f"{n}P{gi + 1 if len(gens) > 1 else ''}"
        pt = scalar_mul(ctx, n, gens[gi])
        expected_pt = _pt((spec["X"], spec["Y"]))
        check(f"{label} coordinates", pt == expected_pt, f"got {pt}, expected {expected_pt}")

        pmq = point_to_pmq(ctx, pt)
        want = tuple(parse_rational(v) for v in spec["pmq"])
        check(f"{label} (p,m,q)", tuple(pmq) == want, f"got {tuple(str(v) for v in pmq)}")

        try:
            quad = pmq_to_quadruple(pmq, {"generator": gens[gi], "multiple": n, "point": pt, "t": Fraction(1)})
            ident = expand_weighted(quad, dec, cancel=spec.get("cancel", False))
        except BiquadError as exc:
            check(f"{label} identity", False, str(exc))
            continue
        line = ident.scaled(scale).line
        check(f"{label} identity", line == spec["line"], f"got      {line}\nexpected {spec['line']}")
        if records is not None:
            records.append(IdentityRecord.from_identity(ident, scale))
    return checks


def run_examples(registry: GeneratorRegistry, only: Optional[Iterable[int]] = None, records=None) -> list[Check]:
    wanted = set(only) if only else None
    out = []
    for case in load_examples():
        if wanted is None or case["example"] in wanted:
            out.extend(run_case(case, registry, records))
    return out
