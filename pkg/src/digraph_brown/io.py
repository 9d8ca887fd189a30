"""Reading and writing the JSON digraph/map documents, plus a tiny DOT importer.

Digraph document::

    {"vertices": ["a", "b"], "edges": [["a", "b"]]}

Map document (domain/codomain may be inline documents or paths relative to
the map file)::

    {"domain": ..., "codomain": ..., "map": {"a": "0"}}
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

from .digraph import Digraph, DigraphError, DigraphMap, validate_digraph, validate_map


class DocumentError(DigraphError):
    """Malformed input document."""


def dumps(doc: Any, indent: int | None = 2) -> str:
    return json.dumps(doc, indent=indent, sort_keys=True, ensure_ascii=False)


def _read_json(path: Path) -> Any:
    try:
        return json.loads(path.read_text())
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: invalid JSON ({exc.msg}, line {exc.lineno})") from exc


_DOT_EDGE = re.compile(r'^\s*("(?:[^"\\]|\\.)*"|[\w.]+)\s*->\s*("(?:[^"\\]|\\.)*"|[\w.]+)\s*(\[.*\])?\s*;?\s*$')
_DOT_NODE = re.compile(r'^\s*("(?:[^"\\]|\\.)*"|[\w.]+)\s*(\[.*\])?\s*;?\s*$')


def _dot_id(tok: str) -> str:
    if tok.startswith('"'):
        return json.loads(tok)
    return tok


def parse_dot(text: str) -> Digraph:
    """Minimal DOT reader: one statement per line, ``a -> b`` edges and bare node ids.

    Chains (``a -> b -> c``), subgraphs and undirected graphs are rejected, as
    are loops and repeated edges.
    """
    body = re.sub(r"//[^\n]*|/\*.*?\*/", "", text, flags=re.S)
    m = re.search(r"^\s*(strict\s+)?digraph\b[^{]*\{(.*)\}\s*$", body, flags=re.S)
    if not m:
        raise DocumentError("expected 'digraph { ... }'")
    vertices: list[str] = []
    seen: set[str] = set()
    edges: list[tuple[str, str]] = []

    def add(v):
        if v not in seen:
            seen.add(v)
            vertices.append(v)

    for raw in re.split(r"[;\n]", m.group(2)):
        line = raw.strip()
        if not line or re.match(r"^(graph|node|edge)\s*\[", line) or re.match(r"^\w+\s*=", line):
            continue
        if line.count("->") > 1 or "{" in line or "--" in line:
            raise DocumentError(f"unsupported DOT statement: {line!r}")
        e = _DOT_EDGE.match(line)
        if e:
            u, v = _dot_id(e.group(1)), _dot_id(e.group(2))
            add(u)
            add(v)
            if (u, v) in edges:
                raise DocumentError(f"multi-edge {u} -> {v}")
            edges.append((u, v))
            continue
        n = _DOT_NODE.match(line)
        if not n:
            raise DocumentError(f"cannot parse DOT statement: {line!r}")
        add(_dot_id(n.group(1)))
    return validate_digraph(vertices, edges)


def to_dot(G: Digraph, name: str = "G") -> str:
    lines = [f"digraph {name} {{"]
    lines += [f"  {json.dumps(v)};" for v in G.vertices]
    lines += [f"  {json.dumps(u)} -> {json.dumps(v)};" for u, v in G.sorted_edges]
    return "\n".join(lines + ["}"]) + "\n"


def digraph_from_doc(doc: Any) -> Digraph:
    if isinstance(doc, Mapping) and "digraph" in doc and "vertices" not in doc:
        return digraph_from_doc(doc["digraph"])
    if not isinstance(doc, Mapping) or not isinstance(doc.get("vertices"), list):
        raise DocumentError("a digraph document needs a 'vertices' list")
    for e in doc.get("edges", []):
        if not (isinstance(e, (list, tuple)) and len(e) == 2):
            raise DocumentError(f"edge {e!r} is not a pair")
    if any(not isinstance(v, str) for v in doc.get("vertices", [])):
        raise DocumentError("vertex labels must be strings")
    return Digraph.from_json(doc)


def load_digraph(path: str | Path) -> Digraph:
    path = Path(path)
    if path.suffix in (".dot", ".gv"):
        try:
            return parse_dot(path.read_text())
        except OSError as exc:
            raise DocumentError(f"cannot read {path}: {exc.strerror}") from exc
    return digraph_from_doc(_read_json(path))


def map_from_doc(doc: Any, base: Path | None = None) -> DigraphMap:
    if not isinstance(doc, Mapping) or not {"domain", "codomain", "map"} <= set(doc):
        raise DocumentError("a map document needs 'domain', 'codomain' and 'map'")

    def side(x):
        if isinstance(x, str):
            return load_digraph((base or Path(".")) / x)
        return digraph_from_doc(x)

    a = doc["map"]
    if not isinstance(a, Mapping):
        raise DocumentError("'map' must be an object")
    return validate_map({str(k): str(v) for k, v in a.items()}, side(doc["domain"]), side(doc["codomain"]))


def load_map(path: str | Path) -> DigraphMap:
    path = Path(path)
    return map_from_doc(_read_json(path), path.parent)


def load_json(path: str | Path) -> Any:
    return _read_json(Path(path))


@dataclass
class Workspace:
    """Named digraphs and maps available to one CLI invocation."""

    digraphs: dict[str, Digraph] = field(default_factory=dict)
    maps: dict[str, DigraphMap] = field(default_factory=dict)

    def _free(self, name: str):
        if name in self.digraphs or name in self.maps:
            raise DocumentError(f"name {name!r} already in use")

    def add_digraph(self, name: str, G: Digraph) -> Digraph:
        self._free(name)
        self.digraphs[name] = G
        return G

    def add_map(self, name: str, f: DigraphMap) -> DigraphMap:
        self._free(name)
        if not f.is_valid():
            raise DocumentError(f"map {name!r} does not validate")
        self.maps[name] = f
        return f

    def digraph(self, name: str) -> Digraph:
        try:
            return self.digraphs[name]
        except KeyError:
            raise DocumentError(f"no digraph named {name!r}") from None

    def map(self, name: str) -> DigraphMap:
        try:
            return self.maps[name]
        except KeyError:
            raise DocumentError(f"no map named {name!r}") from None
