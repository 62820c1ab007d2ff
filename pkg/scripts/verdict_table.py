"""Empirical axiom verdicts for the six standard indices, compared with the
reference table. Prints the table, every counterexample, and the timing.

    python3 scripts/verdict_table.py [--trials 1000] [--seed 42] [--json out.json]
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import dataclass

from pcmaxioms.harness import DEFAULT_TRIALS, REFERENCE_VERDICTS, STANDARD_INDICES, verdict_table


@dataclass
class Config:
    trials: int = DEFAULT_TRIALS
    seed: int = 42
    json_path: str | None = None


def main(cfg: Config) -> int:
    t0 = time.perf_counter()
    vt = verdict_table(STANDARD_INDICES.values(), cfg.seed, cfg.trials)
    elapsed = time.perf_counter() - t0
    print(vt.render_text())
    print()
    print("reference:")
    for name, row in REFERENCE_VERDICTS.items():
        print(f"  {name:<4} {row}")
    mism = vt.mismatches(REFERENCE_VERDICTS)
    print(f"\n{len(mism)} mismatches, {elapsed:.1f}s, trials={cfg.trials}, seed={cfg.seed}")
    for m in mism:
        print("  ", *m)
    if cfg.json_path:
        with open(cfg.json_path, "w") as fh:
            json.dump(vt.to_json(), fh, indent=2)
    return 1 if mism else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description="Reproduce the axiom verdict table.")
    ap.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--json", dest="json_path")
    a = ap.parse_args()
    raise SystemExit(main(Config(a.trials, a.seed, a.json_path)))
