"""Run the randomized H¹ axiom suites and write one JSON line per instance.

    python3 scripts/run_brown_suites.py --out results/brown.jsonl
    python3 scripts/run_brown_suites.py --suite mv --count 2000 --seed 3
"""
import argparse
import json
import sys
import time
from collections import Counter
from dataclasses import replace
from pathlib import Path

from digraph_brown.brown import ACCEPTANCE_PLAN, SUITES, SuiteConfig


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--suite", choices=SUITES, help="run one suite instead of the acceptance plan")
    ap.add_argument("--seed", type=int)
    ap.add_argument("--count", type=int)
    ap.add_argument("--size", type=int)
    ap.add_argument("--out", type=Path)
    args = ap.parse_args()

    plan = [c for c in ACCEPTANCE_PLAN if args.suite in (None, c.name)] or [SuiteConfig(args.suite)]
    overrides = {k: v for k, v in (("seed", args.seed), ("count", args.count), ("size", args.size)) if v is not None}
    plan = [replace(c, **overrides) for c in plan]

    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
    sink = args.out.open("w") if args.out else None
    total_fail = 0
    for cfg in plan:
        t = time.perf_counter()
        tally = Counter()
        first_bad = []
        for rep in cfg.run():
            tally[rep.passed] += 1
            if not rep.passed and len(first_bad) < 5:
                first_bad.append(rep.witness.get("seed"))
            if sink:
                sink.write(json.dumps(rep.to_json(), sort_keys=True) + "\n")
        total_fail += tally[False]
        print(f"{cfg.name:11s} seed={cfg.seed} pass={tally[True]:4d} fail={tally[False]:4d} "
              f"{time.perf_counter() - t:6.1f}s  first failing seeds {first_bad}")
    if sink:
        sink.close()
    return 1 if total_fail else 0


if __name__ == "__main__":
    sys.exit(main())
