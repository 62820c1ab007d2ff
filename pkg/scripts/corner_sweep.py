"""Index values on corner matrices of order 3, next to the published figures.

    python3 scripts/corner_sweep.py [--method gm|em] [--csv out.csv]
"""

from __future__ import annotations

import argparse
import csv
from dataclasses import dataclass

from pcmaxioms.cli import TABLE2_COLUMNS, TABLE2_X, table2_rows

PUBLISHED = {
    "RIC": (0, 0.0474, 0.1011, 0.1391, 0.1658, 0.1853, 0.1999, 0.2113, 0.2204, 0.2279, 0.292),
    "CI": (0, 0.027, 0.068, 0.109, 0.147, 0.184, 0.218, 0.25, 0.28, 0.309, 1.428),
    "GWI": (0, 0.1595, 0.2509, 0.3113, 0.3547, 0.3875, 0.4134, 0.4344, 0.4518, 0.4666, 0.6492),
    "PLI": (0, 0.5, 1.3333, 2.25, 3.2, 4.1667, 5.1429, 6.125, 7.1111, 8.1, 98.1),
    "KII": (0, 0.5, 0.667, 0.75, 0.8, 0.8333, 0.857, 0.875, 0.889, 0.9, 0.99),
    "GCI": (0, 0.1602, 0.4023, 0.6406, 0.8634, 1.07, 1.2622, 1.4414, 1.6093, 1.7676, 7.0692),
}


@dataclass
class Config:
    method: str = "GM"
    csv_path: str | None = None


def main(cfg: Config) -> None:
    rows = table2_rows(TABLE2_X, cfg.method)
    print(f"{'x':>5} " + " ".join(f"{c:>17}" for c in TABLE2_COLUMNS))
    worst = {c: 0.0 for c in TABLE2_COLUMNS}
    for k, r in enumerate(rows):
        cells = []
        for c in TABLE2_COLUMNS:
            worst[c] = max(worst[c], abs(r[c] - PUBLISHED[c][k]))
            cells.append(f"{r[c]:8.4f}/{PUBLISHED[c][k]:<8g}")
        print(f"{r['x']:>5g} " + " ".join(cells))
    print("max |ours - published|: " + ", ".join(f"{c} {v:.2g}" for c, v in worst.items()))
    if cfg.csv_path:
        with open(cfg.csv_path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["x", *TABLE2_COLUMNS])
            w.writerows([[f"{r['x']:g}", *(r[c] for c in TABLE2_COLUMNS)] for r in rows])


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--method", default="GM", choices=("GM", "EM", "gm", "em"))
    ap.add_argument("--csv", dest="csv_path")
    a = ap.parse_args()
    main(Config(a.method.upper(), a.csv_path))
