#!/usr/bin/env python3
"""Sweep h over small integers and rationals, recording the first usable point.

For each h the scales t = 1, 2, 1/2, 3, ... are tried in order; the first point
on E(h t^4) (search only, no registry) that yields a nontrivial quadruple is kept.
Output is one JSON object per h.

    python scripts/search_generators.py --h-max 30 --num 2000 --den 2
"""

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass
from fractions import Fraction

from biquad.derive import iter_solutions
from biquad.errors import DegenerateParameter
from biquad.pointsearch import GeneratorRegistry, SearchBounds


@dataclass
class Config:
    h_max: int = 30
    num: int = 2000
    den: int = 1
    max_t: int = 7
    negative: bool = False
    workers: int = 1


def sweep(cfg: Config):
    empty = GeneratorRegistry()
    bounds = SearchBounds(cfg.num, cfg.den)
    hs = [Fraction(h) for h in range(2, cfg.h_max + 1)]
    if cfg.negative:
        hs += [-h for h in hs]
    for h in hs:
        t0 = time.perf_counter()
        row = {"h": str(h)}
        try:
            quad = next(iter_solutions(h, bounds=bounds, registry=empty, max_t=cfg.max_t, workers=cfg.workers), None)
        except DegenerateParameter as exc:
            quad, row["error"] = None, str(exc)
        if quad is not None:
            prov = quad.provenance
            row.update(
                t=str(prov["t"]),
                generator=[str(prov["generator"].x), str(prov["generator"].y)],
                multiple=prov["multiple"],
                quadruple=list(quad.integral),
            )
        row["seconds"] = round(time.perf_counter() - t0, 3)
        yield row


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--h-max", type=int, default=Config.h_max)
    ap.add_argument("--num", type=int, default=Config.num)
    ap.add_argument("--den", type=int, default=Config.den)
    ap.add_argument("--max-t", type=int, default=Config.max_t)
    ap.add_argument("--negative", action="store_true")
    ap.add_argument("--workers", type=int, default=Config.workers)
    cfg = Config(**vars(ap.parse_args(argv)))
    print(json.dumps({"config": asdict(cfg)}))
    found = 0
    for row in sweep(cfg):
        found += "quadruple" in row
        print(json.dumps(row))
    print(json.dumps({"found": found}), file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
