"""Finite digraphs, digraph maps and line digraphs.

Vertices are opaque string labels kept in lexicographic order, so every
canonical choice made downstream (class representatives, preimage
selection, path orderings) is reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence


class DigraphError(ValueError):
    """Base class for validation failures."""


class SelfLoop(DigraphError):
    pass


class UnknownEndpoint(DigraphError):
    pass


class DuplicateVertexLabel(DigraphError):
    pass


class UnknownVertex(DigraphError):
    pass


class BadPartition(DigraphError):
    pass


class NotTotal(DigraphError):
    pass


class EdgeViolation(DigraphError):
    def __init__(self, x: str, y: str, fx: str, fy: str):
        super().__init__(f"edge ({x!r}, {y!r}) goes to ({fx!r}, {fy!r}), which is not an edge")
        self.edge = (x, y)
        self.image = (fx, fy)


class DomainMismatch(DigraphError):
    pass


def pair_label(u: str, v: str) -> str:
    return f"({u},{v})"


@dataclass(frozen=True)
class Digraph:
    vertices: tuple[str, ...]
    edges: frozenset[tuple[str, str]]

    def __post_init__(self):
        # Constructed directly only by trusted code; validate_digraph is the
        # checked entry point. Still normalise the vertex order.
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices)))
        object.__setattr__(self, "edges", frozenset(self.edges))

    @classmethod
    def build(cls, vertices: Iterable[str], edges: Iterable[tuple[str, str]] = ()) -> "Digraph":
        return validate_digraph(list(vertices), [tuple(e) for e in edges])

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v: object) -> bool:
        return v in self.vertex_set

    @property
    def vertex_set(self) -> frozenset[str]:
        vs = self.__dict__.get("_vset")
        if vs is None:
            vs = frozenset(self.vertices)
            object.__setattr__(self, "_vset", vs)
        return vs

    @property
    def sorted_edges(self) -> list[tuple[str, str]]:
        return sorted(self.edges)

    def out_neighbors(self, v: str) -> list[str]:
        return self._adjacency()[0][v]

    def in_neighbors(self, v: str) -> list[str]:
        return self._adjacency()[1][v]

    def _adjacency(self):
        adj = self.__dict__.get("_adj")
        if adj is None:
            out = {v: [] for v in self.vertices}
            inn = {v: [] for v in self.vertices}
            for u, v in sorted(self.edges):
                out[u].append(v)
                inn[v].append(u)
            adj = (out, inn)
            object.__setattr__(self, "_adj", adj)
        return adj

    def has_edge(self, u: str, v: str) -> bool:
        return (u, v) in self.edges

    def components(self) -> list[list[str]]:
        """Weakly connected components, each sorted, ordered by first vertex."""
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)
        groups: dict[str, list[str]] = {}
        for v in self.vertices:
            groups.setdefault(find(v), []).append(v)
        return sorted(groups.values())

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.sorted_edges]}

    @classmethod
    def from_json(cls, doc: Mapping) -> "Digraph":
        return validate_digraph(list(doc.get("vertices", [])), [tuple(e) for e in doc.get("edges", [])])

    def __repr__(self) -> str:
        es = ", ".join(f"{u}->{v}" for u, v in self.sorted_edges)
        return f"Digraph(V={list(self.vertices)}, E=[{es}])"


def validate_digraph(vertices: Sequence[str], edges: Iterable[Sequence[str]]) -> Digraph:
    seen: set[str] = set()
    for v in vertices:
        if not isinstance(v, str):
            raise DigraphError(f"vertex label {v!r} is not a string")
        if v in seen:
            raise DuplicateVertexLabel(f"duplicate vertex label {v!r}")
        seen.add(v)
    es = set()
    for e in edges:
        if len(e) != 2:
            raise DigraphError(f"edge {e!r} is not a pair")
        u, v = e
        if u == v:
            raise SelfLoop(f"self-loop at {u!r}")
        for x in (u, v):
            if x not in seen:
                raise UnknownEndpoint(f"{x!r} in edge ({u!r}, {v!r})")
        es.add((u, v))
    return Digraph(tuple(vertices), frozenset(es))


EMPTY = Digraph((), frozenset())
POINT = Digraph(("*",), frozenset())


@dataclass(frozen=True)
class DigraphMap:
    domain: Digraph
    codomain: Digraph
    assignment: Mapping[str, str] = field(hash=False)

    def __post_init__(self):
        object.__setattr__(self, "assignment", dict(sorted(self.assignment.items())))

    def __call__(self, v: str) -> str:
        return self.assignment[v]

    def __eq__(self, other):
        if not isinstance(other, DigraphMap):
            return NotImplemented
        return (self.domain == other.domain and self.codomain == other.codomain
                and self.assignment == other.assignment)

    def __hash__(self):
        return hash((self.domain, self.codomain, self.as_tuple()))

    def as_tuple(self) -> tuple[str, ...]:
        return tuple(self.assignment[v] for v in self.domain.vertices)

    def compose(self, inner: "DigraphMap") -> "DigraphMap":
        """``self ∘ inner``."""
        if inner.codomain != self.domain:
            raise DomainMismatch("codomain of inner map differs from domain of outer map")
        return DigraphMap(inner.domain, self.codomain,
                          {v: self.assignment[w] for v, w in inner.assignment.items()})

    def image_vertices(self) -> set[str]:
        return set(self.assignment.values())

    def image_edges(self) -> set[tuple[str, str]]:
        """Edges of the image digraph: preserved (non-collapsed) edge images."""
        a = self.assignment
        return {(a[u], a[v]) for u, v in self.domain.edges if a[u] != a[v]}

    def is_valid(self) -> bool:
        try:
            validate_map(self.assignment, self.domain, self.codomain)
        except DigraphError:
            return False
        return True

    def to_json(self) -> dict:
        return {"domain": self.domain.to_json(), "codomain": self.codomain.to_json(),
                "map": dict(self.assignment)}

    @classmethod
    def from_json(cls, doc: Mapping) -> "DigraphMap":
        return validate_map(doc["map"], Digraph.from_json(doc["domain"]), Digraph.from_json(doc["codomain"]))

    def __repr__(self) -> str:
        return f"DigraphMap({dict(self.assignment)})"


def validate_map(assignment: Mapping[str, str], G: Digraph, H: Digraph) -> DigraphMap:
    missing = [v for v in G.vertices if v not in assignment]
    if missing:
        raise NotTotal(f"no image for {missing}")
    extra = [v for v in assignment if v not in G]
    if extra:
        raise UnknownVertex(f"{extra} not in domain")
    bad = [w for w in assignment.values() if w not in H]
    if bad:
        raise UnknownVertex(f"{bad} not in codomain")
    for x, y in sorted(G.edges):
        fx, fy = assignment[x], assignment[y]
        if fx != fy and (fx, fy) not in H.edges:
            raise EdgeViolation(x, y, fx, fy)
    return DigraphMap(G, H, dict(assignment))


def identity(G: Digraph) -> DigraphMap:
    return DigraphMap(G, G, {v: v for v in G.vertices})


def constant(G: Digraph, H: Digraph, value: str) -> DigraphMap:
    if value not in H:
        raise UnknownVertex(value)
    return DigraphMap(G, H, {v: value for v in G.vertices})


def inclusion(X: Digraph, G: Digraph) -> DigraphMap:
    """Inclusion of a subdigraph; raises if X is not a subdigraph of G."""
    return validate_map({v: v for v in X.vertices}, X, G)


def is_subdigraph(X: Digraph, G: Digraph) -> bool:
    return X.vertex_set <= G.vertex_set and X.edges <= G.edges


@dataclass(frozen=True)
class LineDigraph:
    """An n-step line digraph given by its orientation word.

    ``word[i] == '+'`` means the edge i -> i+1, ``'-'`` means i+1 -> i.
    """
    word: str

    def __post_init__(self):
        if any(c not in "+-" for c in self.word):
            raise DigraphError(f"orientation word {self.word!r} must be over '+-'")

    @property
    def steps(self) -> int:
        return len(self.word)

    def digraph(self) -> Digraph:
        vs = [str(i) for i in range(self.steps + 1)]
        es = [(str(i), str(i + 1)) if c == "+" else (str(i + 1), str(i)) for i, c in enumerate(self.word)]
        return Digraph(tuple(vs), frozenset(es))

    def reversed(self) -> "LineDigraph":
        flip = {"+": "-", "-": "+"}
        return LineDigraph("".join(flip[c] for c in reversed(self.word)))


I_PLUS = LineDigraph("+")
I_MINUS = LineDigraph("-")


# -- set operations ---------------------------------------------------------

def union(G1: Digraph, G2: Digraph) -> Digraph:
    return Digraph(tuple(G1.vertex_set | G2.vertex_set), G1.edges | G2.edges)


def intersection(G1: Digraph, G2: Digraph) -> Digraph:
    return Digraph(tuple(G1.vertex_set & G2.vertex_set), G1.edges & G2.edges)


def left_label(v: str) -> str:
    return f"L:{v}"


def right_label(v: str) -> str:
    return f"R:{v}"


def disjoint_union(G1: Digraph, G2: Digraph) -> tuple[Digraph, DigraphMap, DigraphMap]:
    """Coproduct with ``L:``/``R:`` tagged labels, plus the two injections."""
    vs = [left_label(v) for v in G1.vertices] + [right_label(v) for v in G2.vertices]
    es = {(left_label(u), left_label(v)) for u, v in G1.edges}
    es |= {(right_label(u), right_label(v)) for u, v in G2.edges}
    D = Digraph(tuple(vs), frozenset(es))
    inl = DigraphMap(G1, D, {v: left_label(v) for v in G1.vertices})
    inr = DigraphMap(G2, D, {v: right_label(v) for v in G2.vertices})
    return D, inl, inr


def box_product(G: Digraph, H: Digraph) -> Digraph:
    labels = {(u, v): pair_label(u, v) for u in G.vertices for v in H.vertices}
    if len(set(labels.values())) != len(labels):
        raise DigraphError("pair labels collide; vertex labels must not make '(u,v)' ambiguous")
    es = set()
    for u in G.vertices:
        for a, b in H.edges:
            es.add((labels[u, a], labels[u, b]))
    for a, b in G.edges:
        for v in H.vertices:
            es.add((labels[a, v], labels[b, v]))
    return Digraph(tuple(labels.values()), frozenset(es))


def collapse(G: Digraph, rename: Mapping[str, str]) -> tuple[Digraph, DigraphMap]:
    """Quotient by the fibres of ``rename`` (vertices absent from it stay put).

    Edges inside a class are dropped. Returns the quotient and the projection.
    """
    proj = {v: rename.get(v, v) for v in G.vertices}
    es = {(proj[u], proj[v]) for u, v in G.edges if proj[u] != proj[v]}
    Q = Digraph(tuple(set(proj.values())), frozenset(es))
    return Q, DigraphMap(G, Q, proj)


def quotient(G: Digraph, classes: Iterable[Iterable[str]]) -> tuple[Digraph, DigraphMap]:
    """Quotient digraph; each class is named by its minimal member."""
    classes = [sorted(c) for c in classes]
    seen: dict[str, int] = {}
    for i, c in enumerate(classes):
        if not c:
            raise BadPartition("empty class")
        for v in c:
            if v not in G:
                raise BadPartition(f"{v!r} is not a vertex")
            if v in seen:
                raise BadPartition(f"{v!r} appears in two classes")
            seen[v] = i
    if len(seen) != len(G.vertices):
        raise BadPartition(f"classes miss {sorted(G.vertex_set - set(seen))}")
    rename = {v: classes[i][0] for v, i in seen.items()}
    return collapse(G, rename)


def quotient_by_subdigraph(G: Digraph, X: Iterable[str], point: str = "*") -> tuple[Digraph, DigraphMap]:
    """G/X: add a point and identify every vertex of X with it."""
    if point in G:
        raise DigraphError(f"label {point!r} already used")
    Gp = Digraph(G.vertices + (point,), G.edges)
    X = list(X)
    for x in X:
        if x not in G:
            raise UnknownVertex(x)
    Q, proj = collapse(Gp, {x: point for x in X})
    return Q, DigraphMap(G, Q, {v: proj(v) for v in G.vertices})


def induced_subdigraph(G: Digraph, S: Iterable[str]) -> Digraph:
    S = set(S)
    unknown = S - G.vertex_set
    if unknown:
        raise UnknownVertex(f"{sorted(unknown)}")
    return Digraph(tuple(S), frozenset((u, v) for u, v in G.edges if u in S and v in S))


def image_2(f: DigraphMap) -> set[str]:
    """Codomain vertices hit by at least two domain vertices."""
    counts: dict[str, int] = {}
    for w in f.assignment.values():
        counts[w] = counts.get(w, 0) + 1
    return {w for w, c in counts.items() if c >= 2}


def relabel(G: Digraph, rename: Mapping[str, str]) -> Digraph:
    if len(set(rename[v] for v in G.vertices)) != len(G.vertices):
        raise DigraphError("relabelling is not injective")
    return Digraph(tuple(rename[v] for v in G.vertices),
                   frozenset((rename[u], rename[v]) for u, v in G.edges))


# -- small named digraphs used throughout ---------------------------------

def line(word: str) -> Digraph:
    return LineDigraph(word).digraph()


def cycle(n: int, prefix: str = "") -> Digraph:
    vs = [f"{prefix}{i}" for i in range(n)]
    return Digraph(tuple(vs), frozenset((vs[i], vs[(i + 1) % n]) for i in range(n)))


def edgeless(labels: Iterable[str]) -> Digraph:
    return Digraph(tuple(labels), frozenset())
