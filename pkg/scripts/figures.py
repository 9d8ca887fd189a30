"""Rebuild the figure instances, print their sizes and compare with the stored fixtures.

    python3 scripts/figures.py              # compare
    python3 scripts/figures.py --write DIR  # regenerate into DIR
"""
import argparse
import sys
from pathlib import Path

from digraph_brown.figures import FIGURES, diff_all, fixture_dir, write_all


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--write", type=Path)
    args = ap.parse_args()
    if args.write:
        for p in write_all(args.write):
            print(p)
        return 0
    status = diff_all(fixture_dir())
    for name, build in FIGURES.items():
        G = build()["digraph"]
        print(f"{name:24s} |V|={len(G['vertices']):2d} |E|={len(G['edges']):2d}  {status[name]}")
    return 0 if all(s == "identical" for s in status.values()) else 1


if __name__ == "__main__":
    sys.exit(main())
