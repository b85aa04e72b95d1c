"""Rational points on E(h): bounded-height search and a registry of known generators."""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional

from .curve import CurveContext, CurvePoint, build_curve, on_curve
from .errors import DataIntegrityError, DomainError
from .numeric import format_rational, is_perfect_square, parse_rational

REGISTRY_ENV = "BIQUAD_REGISTRY"


@dataclass(frozen=True)
class SearchBounds:
    """Candidates are X = r / s^2 with |r| <= max_numerator and s = den(h) * e,
    1 <= e <= max_denominator_base."""

    max_numerator: int = 1000
    max_denominator_base: int = 1
    max_results: int = 64

    def __post_init__(self):
        for name in ("max_numerator", "max_denominator_base", "max_results"):
            if getattr(self, name) < 1:
                raise DomainError(f"SearchBounds.{name} must be >= 1")


def _scan(c2: int, c1: int, c0: int, lo: int, hi: int) -> list[tuple[int, int]]:
    hits = []
    for r in range(lo, hi + 1):
        v = ((r + c2) * r + c1) * r + c0
        root = is_perfect_square(v)
        if root is not None:
            hits.append((r, root))
    return hits


def _chunks(lo, hi, parts):
    size = max(1, (hi - lo + 1 + parts - 1) // parts)
    start = lo
    while start <= hi:
        yield start, min(hi, start + size - 1)
        start += size


def search_points(ctx: CurveContext, bounds: SearchBounds, workers: int = 1) -> list[CurvePoint]:
    """Points with Y >= 0, ordered by (s, r), one per X value.

    Every rational point has X = x / u^2 with x on the integral model
    (u = den(h)), so only denominators s that are multiples of u are scanned.
    """
    u = ctx.scale
    n = bounds.max_numerator
    jobs = []
    for e in range(1, bounds.max_denominator_base + 1):
        s = u * e
        coeffs = tuple(int(c) for c in (ctx.F * s**2, ctx.G * s**4, ctx.H * s**6))
        for lo, hi in _chunks(-n, n, max(1, workers)):
            jobs.append((s, coeffs, lo, hi))

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_scan_job, jobs))
    else:
        results = [_scan_job(job) for job in jobs]

    found: list[CurvePoint] = []
    seen: set[Fraction] = set()
    for (s, _, _, _), hits in zip(jobs, results):
        for r, root in hits:
            x = Fraction(r, s * s)
            if x in seen:
                continue
            seen.add(x)
            pt = CurvePoint(x, Fraction(root, s**3))
            assert on_curve(ctx, pt), pt
            found.append(pt)
            if len(found) >= bounds.max_results:
                return found
    return found


def _scan_job(job):
    _, (c2, c1, c0), lo, hi = job
    return _scan(c2, c1, c0, lo, hi)


class GeneratorRegistry:
    """Known points keyed by h; every entry is checked against E(h) on insert."""

    def __init__(self):
        self._points: dict[Fraction, list[CurvePoint]] = {}
        self._sources: dict[Fraction, str] = {}

    def add(self, h, points: Iterable[CurvePoint], source: str = "") -> None:
        h = Fraction(h)
        try:
            ctx = build_curve(h)
        except DomainError as exc:
            raise DataIntegrityError(f"registry entry h={h}: {exc}") from exc
        pts = list(points)
        for pt in pts:
            if pt.is_infinity or not on_curve(ctx, pt):
                raise DataIntegrityError(f"registry entry h={h}: {pt} is not on {ctx}")
        self._points.setdefault(h, []).extend(pts)
        if source:
            self._sources[h] = source

    def get(self, h) -> list[CurvePoint]:
        return list(self._points.get(Fraction(h), ()))

    def source(self, h) -> str:
        return self._sources.get(Fraction(h), "")

    def __contains__(self, h):
        return Fraction(h) in self._points

    def __iter__(self):
        return iter(self._points)

    def __len__(self):
        return len(self._points)

    @classmethod
    def from_json(cls, entries: list) -> "GeneratorRegistry":
        reg = cls()
        for i, entry in enumerate(entries):
            try:
                h = parse_rational(entry["h"])
                pts = [CurvePoint(parse_rational(x), parse_rational(y)) for x, y in entry["points"]]
            except (KeyError, TypeError, ValueError) as exc:
                raise DataIntegrityError(f"registry entry {i}: {exc}") from exc
            reg.add(h, pts, entry.get("source", ""))
        return reg

    def to_json(self) -> list:
        return [
            {
                "h": format_rational(h),
                "points": [[format_rational(p.x), format_rational(p.y)] for p in pts],
                "source": self._sources.get(h, ""),
            }
            for h, pts in self._points.items()
        ]

    @classmethod
    def load(cls, path) -> "GeneratorRegistry":
        with open(path, encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise DataIntegrityError(f"{path}: {exc}") from exc
        return cls.from_json(data)

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json(), fh, indent=1)
            fh.write("\n")


def default_registry_path() -> Path:
    env = os.environ.get(REGISTRY_ENV)
    if env:
        return Path(env)
    return Path(str(resources.files("biquad") / "data" / "generators.json"))


@lru_cache(maxsize=8)
def _load_cached(path: str, mtime: float) -> GeneratorRegistry:
    return GeneratorRegistry.load(path)


def load_registry(path=None) -> GeneratorRegistry:
    path = Path(path) if path is not None else default_registry_path()
    return _load_cached(str(path), path.stat().st_mtime)


def known_generators(h, registry: Optional[GeneratorRegistry] = None) -> list[CurvePoint]:
    reg = registry if registry is not None else load_registry()
    return reg.get(h)
