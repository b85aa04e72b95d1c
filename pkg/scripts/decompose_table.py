#!/usr/bin/env python3
"""Count decompositions of h into n-1 signed fourth powers over a shared denominator.

    python scripts/decompose_table.py --h-max 40 --n 2 3 4 5 --bound 8
"""

import argparse
from dataclasses import dataclass, field

from biquad.compose import decompose


@dataclass
class Config:
    h_max: int = 40
    n: list[int] = field(default_factory=lambda: [2, 3, 4, 5])
    bound: int = 8


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--h-max", type=int, default=Config.h_max)
    ap.add_argument("--n", type=int, nargs="+", default=Config().n)
    ap.add_argument("--bound", type=int, default=Config.bound)
    cfg = Config(**vars(ap.parse_args(argv)))
    print("h".rjust(4) + "".join(f"n={n}".rjust(8) for n in cfg.n) + "  first")
    for h in range(1, cfg.h_max + 1):
        counts, first = [], ""
        for n in cfg.n:
            decs = decompose(h, n, cfg.bound)
            counts.append(len(decs))
            if decs and not first:
                first = str(decs[0])
        print(f"{h:4d}" + "".join(f"{c:8d}" for c in counts) + f"  {first}")


if __name__ == "__main__":
    main()
