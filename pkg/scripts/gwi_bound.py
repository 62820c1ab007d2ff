"""How large GWI gets: corner matrices of growing order and a random search.

The L1 gap between a probability vector and a normalised column is at most
2, so GWI <= 2 always holds; the figures here show that 1 does not.

    python3 scripts/gwi_bound.py [--samples 20000] [--seed 0]
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from pcmaxioms.harness import random_reciprocal
from pcmaxioms.indices import gwi
from pcmaxioms.matrix import corner


@dataclass
class Config:
    samples: int = 20_000
    seed: int = 0
    orders: tuple[int, ...] = (3, 4, 5, 6, 7, 8, 10, 15)


def main(cfg: Config) -> None:
    print("corner(n, x):   n   max over x=10^1..10^12   limit x -> inf")
    for n in cfg.orders:
        ladder = max(gwi(corner(n, 10.0 ** k)) for k in range(1, 13))
        print(f"{'':15}{n:>3}   {ladder:22.4f}   {gwi(corner(n, 1e300)):14.4f}")
    for n in (3, 4, 5):
        best, arg = 0.0, None
        for s in range(cfg.samples):
            m = random_reciprocal(n, "saaty", [cfg.seed, n, s])
            v = gwi(m)
            if v > best:
                best, arg = v, m
        print(f"random Saaty n={n}: max GWI {best:.4f} at {arg.tolist()}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description="Probe the upper range of GWI.")
    ap.add_argument("--samples", type=int, default=20_000)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    main(Config(a.samples, a.seed))
