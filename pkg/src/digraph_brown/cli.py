"""Command-line front end: ``digraph-brown <command> ...``.

Exit codes: 0 success, 1 a check or fixture diff failed, 2 usage error,
3 invalid input document.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import constructions as cons
from .brown import SUITES, suite
from .digraph import Digraph, DigraphError, validate_map
from .figures import diff_all, fixture_dir, triangle, write_all
from .homotopy import (
    DEFAULT_BUDGET, Homotopy, decide_homotopic, hep_extension_search, homotopy_equivalent, is_contractible,
)
from .io import DocumentError, Workspace, dumps, load_digraph, load_json, load_map, to_dot
from .path_homology import DEFAULT_PMAX, cohomology, homology, induced_cochain_map

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INVALID = 0, 1, 2, 3

BUILDERS = ("cone", "cylinder", "mod-cylinder", "mod-cone", "mod-mapping-cone", "tube", "s-digraph")


class UsageError(Exception):
    pass


def _gh(pairs: Sequence[str] | None) -> dict[str, str]:
    out = {}
    for p in pairs or ():
        h, sep, g = p.partition("=")
        if not sep or not h or not g:
            raise UsageError(f"--gh expects h=g, got {p!r}")
        out[h] = g
    return out


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command} needs " + ", ".join("--" + n.replace("_", "-") for n in missing))


class Runner:
    def __init__(self, args: argparse.Namespace, out=None):
        self.args = args
        self.out = out or sys.stdout
        self.ws = Workspace()

    def emit(self, doc):
        indent = self.args.json_indent
        self.out.write(dumps(doc, indent if indent >= 0 else None) + "\n")

    def digraph(self, name="digraph"):
        G = getattr(self.args, name)
        return self.ws.add_digraph(name, load_digraph(G))

    def map(self, name="map"):
        return self.ws.add_map(name, load_map(getattr(self.args, name)))

    # -- commands -----------------------------------------------------------

    def build(self) -> int:
        a = self.args
        kind = a.kind
        if kind == "cone":
            _need(a, "digraph")
            res = cons.cone(self.digraph())
        elif kind == "s-digraph":
            _need(a, "digraph", "digraph2")
            res = cons.s_digraph(self.digraph(), self.digraph("digraph2"), _gh(a.gh) or None)
        elif kind == "tube":
            _need(a, "map", "map2")
            res = cons.mapping_tube(self.map(), self.map("map2"))
        else:
            _need(a, "map")
            f = self.map()
            if kind == "cylinder":
                res = cons.mapping_cylinder(f)
            elif kind == "mod-cylinder":
                res = cons.modified_mapping_cylinder(f)
            elif kind == "mod-cone":
                res = cons.modified_cone(f, _gh(a.gh) or None)
            else:
                res = cons.modified_mapping_cone(f, _gh(a.gh) or None)
        if a.dot:
            self.out.write(to_dot(res.result))
        else:
            self.emit(res.to_json())
        return EXIT_OK

    def homology(self) -> int:
        _need(self.args, "digraph")
        self.emit(homology(self.digraph(), self.args.pmax).records())
        return EXIT_OK

    def cohomology(self) -> int:
        _need(self.args, "digraph")
        self.emit(cohomology(self.digraph(), self.args.pmax).records())
        return EXIT_OK

    def induced(self) -> int:
        _need(self.args, "map")
        f = self.map()
        p = self.args.pmax
        homs = induced_cochain_map(f, cohomology(f.codomain, p), cohomology(f.domain, p))
        self.emit([{"degree": k, "source": h.source.describe(), "target": h.target.describe(),
                    "matrix": h.matrix.tolist()} for k, h in enumerate(homs)])
        return EXIT_OK

    def homotopic(self) -> int:
        _need(self.args, "map", "map2")
        v = decide_homotopic(self.map(), self.map("map2"), self.args.budget)
        self.emit(v.to_json())
        return EXIT_OK

    def contractible(self) -> int:
        _need(self.args, "digraph")
        self.emit(is_contractible(self.digraph(), self.args.budget).to_json())
        return EXIT_OK

    def equivalent(self) -> int:
        _need(self.args, "digraph", "digraph2")
        self.emit(homotopy_equivalent(self.digraph(), self.digraph("digraph2"), self.args.budget).to_json())
        return EXIT_OK

    def hep_check(self) -> int:
        a = self.args
        if a.remark:
            G = triangle()
            X = Digraph.build("ab", [("a", "b")])
            f = validate_map({v: v for v in G.vertices}, G, G)
            F = Homotopy.from_frames("+", [validate_map({"a": "a", "b": "b"}, X, G),
                                           validate_map({"a": "b", "b": "b"}, X, G)])
        else:
            _need(a, "digraph", "sub", "map", "homotopy")
            G, X, f = self.digraph(), self.digraph("sub"), self.map()
            F = Homotopy.from_json(load_json(a.homotopy), X, f.codomain)
        trace = []
        ext = hep_extension_search(G, X, f, F, trace)
        doc = {"extension": ext.to_json() if ext else None,
               "rejections": [{"level": r.level, "vertex": r.vertex, "value": r.value,
                               "violated": [list(e) for e in r.violated]} for r in trace]}
        self.emit(doc)
        return EXIT_OK

    def verify(self) -> int:
        a = self.args
        names = SUITES if a.suite == "all" else (a.suite,)
        failed = 0
        degree = 2 if a.experimental_h2 else 1
        for name in names:
            for rep in suite(name, a.seed, a.count, a.size, degree):
                doc = rep.to_json()
                if degree != 1:
                    doc["degree"], doc["normative"] = degree, False
                self.out.write(dumps(doc, None) + "\n")
                failed += not rep.passed
        return EXIT_FAIL if failed else EXIT_OK

    def figures(self) -> int:
        a = self.args
        if a.write:
            paths = write_all(Path(a.write))
            self.emit({"written": [str(p) for p in paths]})
            return EXIT_OK
        status = diff_all(Path(a.against) if a.against else fixture_dir())
        self.emit(status)
        return EXIT_OK if all(s == "identical" for s in status.values()) else EXIT_FAIL


def _global_flags(parser: argparse.ArgumentParser, suppress: bool):
    # subcommands repeat the flags without defaults so they cannot clobber earlier values
    def d(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--budget", type=int, default=d(DEFAULT_BUDGET), help="state budget for homotopy searches")
    parser.add_argument("--pmax", type=int, default=d(DEFAULT_PMAX), help="top degree for (co)homology")
    parser.add_argument("--seed", type=int, default=d(0))
    parser.add_argument("--json-indent", type=int, default=d(2), help="negative for one-line output")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="digraph-brown",
                                description="Homotopy and path cohomology of finite digraphs.")
    _global_flags(p, suppress=False)
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name, help_):
        c = sub.add_parser(name, help=help_)
        _global_flags(c, suppress=True)
        return c

    b = cmd("build", "build a construction and its canonical maps")
    b.add_argument("kind", choices=BUILDERS)
    b.add_argument("--digraph")
    b.add_argument("--digraph2")
    b.add_argument("--map")
    b.add_argument("--map2")
    b.add_argument("--gh", action="append", metavar="H=G", help="override the preimage chosen for h")
    b.add_argument("--dot", action="store_true", help="emit the digraph as DOT instead of JSON")

    for name, h in (("homology", "path homology groups"), ("cohomology", "path cohomology groups")):
        c = cmd(name, h)
        c.add_argument("--digraph")
    c = cmd("induced", "f^* on cohomology, in Smith coordinates")
    c.add_argument("--map")
    c = cmd("homotopic", "decide whether two maps are homotopic")
    c.add_argument("--map")
    c.add_argument("--map2")
    c = cmd("contractible", "decide contractibility")
    c.add_argument("--digraph")
    c = cmd("equivalent", "search for a homotopy equivalence")
    c.add_argument("--digraph")
    c.add_argument("--digraph2")
    c = cmd("hep-check", "try to extend a homotopy from a subdigraph")
    c.add_argument("--digraph")
    c.add_argument("--sub")
    c.add_argument("--map")
    c.add_argument("--homotopy", help='JSON {"word": "+-", "frames": [...]} on the subdigraph')
    c.add_argument("--remark", action="store_true", help="use the built-in triangle instance")
    c = cmd("verify", "randomized Brown-axiom checks for H^1 (JSON lines)")
    c.add_argument("suite", choices=("all",) + SUITES)
    c.add_argument("--count", type=int, default=100)
    c.add_argument("--size", type=int, default=6)
    c.add_argument("--experimental-h2", action="store_true",
                   help="run the same checks for H² (evidence only, not a normative verdict)")
    c = cmd("figures", "regenerate the figure fixtures and diff them")
    c.add_argument("--write", metavar="DIR", help="write fixtures to DIR instead of diffing")
    c.add_argument("--against", metavar="DIR", help="diff against DIR (default: packaged fixtures)")
    return p


def run(argv: Sequence[str] | None = None, out=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    runner = Runner(args, out)
    try:
        return getattr(runner, args.command.replace("-", "_"))()
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DocumentError, DigraphError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
