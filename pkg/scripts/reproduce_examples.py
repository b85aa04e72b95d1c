#!/usr/bin/env python3
"""Rebuild every worked example from its generator and write the identity catalog.

    python scripts/reproduce_examples.py --out results/examples_catalog.jsonl
"""

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from biquad.catalog import write_catalog
from biquad.pointsearch import load_registry
from biquad.reproduce import run_examples


@dataclass
class Config:
    out: Path = Path("results/examples_catalog.jsonl")
    registry: Path | None = None


def run(cfg: Config) -> int:
    records = []
    checks = run_examples(load_registry(cfg.registry), records=records)
    by_example = {}
    for c in checks:
        by_example.setdefault(c.example, []).append(c)
    for ex, cs in sorted(by_example.items()):
        bad = [c.name for c in cs if not c.ok]
        print(f"example {ex}: {len(cs) - len(bad)}/{len(cs)} checks" + (f"  FAILED {bad}" if bad else ""))
    cfg.out.parent.mkdir(parents=True, exist_ok=True)
    write_catalog(cfg.out, records)
    print(f"wrote {len(records)} identities to {cfg.out}")
    return 0 if all(c.ok for c in checks) else 1


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Config.out)
    ap.add_argument("--registry", type=Path)
    sys.exit(run(Config(**vars(ap.parse_args()))))
