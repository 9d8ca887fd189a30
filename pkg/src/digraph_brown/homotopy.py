"""Exact homotopy decisions for maps between finite digraphs.

The space of digraph maps G → H is finite, so breadth-first search over the
symmetric one-step relation decides homotopy exactly once the component of
the start map is exhausted.
"""
from __future__ import annotations

import enum
import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

from .digraph import (
    Digraph, DigraphError, DigraphMap, DomainMismatch, LineDigraph, box_product,
    constant, identity, pair_label, validate_map,
)

DEFAULT_BUDGET = 10**6


class EmptyDigraph(DigraphError):
    pass


class InvalidRestriction(DigraphError):
    pass


@dataclass(frozen=True)
class Homotopy:
    domain: Digraph
    codomain: Digraph
    line: LineDigraph
    frames: tuple[DigraphMap, ...]

    def __post_init__(self):
        object.__setattr__(self, "frames", tuple(self.frames))
        if len(self.frames) != self.line.steps + 1:
            raise DigraphError("need exactly one frame per vertex of the line digraph")

    @classmethod
    def from_frames(cls, word: str, frames: Sequence[DigraphMap]) -> "Homotopy":
        return cls(frames[0].domain, frames[0].codomain, LineDigraph(word), tuple(frames))

    @property
    def start(self) -> DigraphMap:
        return self.frames[0]

    @property
    def end(self) -> DigraphMap:
        return self.frames[-1]

    def reversed(self) -> "Homotopy":
        return Homotopy(self.domain, self.codomain, self.line.reversed(), self.frames[::-1])

    def then(self, other: "Homotopy") -> "Homotopy":
        if self.end != other.start:
            raise DomainMismatch("homotopies do not meet")
        return Homotopy(self.domain, self.codomain, LineDigraph(self.line.word + other.line.word),
                        self.frames + other.frames[1:])

    def assembled(self) -> tuple[Digraph, dict[str, str]]:
        """The map F on G □ I_n as a raw assignment."""
        P = box_product(self.domain, self.line.digraph())
        a = {}
        for i, fr in enumerate(self.frames):
            for v in self.domain.vertices:
                a[pair_label(v, str(i))] = fr.assignment[v]
        return P, a

    def to_json(self) -> dict:
        return {"word": self.line.word, "frames": [dict(f.assignment) for f in self.frames]}

    @classmethod
    def from_json(cls, doc: Mapping, G: Digraph, H: Digraph) -> "Homotopy":
        frames = [validate_map(fr, G, H) for fr in doc["frames"]]
        return cls(G, H, LineDigraph(doc["word"]), tuple(frames))


class Status(str, enum.Enum):
    HOMOTOPIC = "Homotopic"
    NOT_HOMOTOPIC = "NotHomotopic"
    BUDGET_EXCEEDED = "BudgetExceeded"


@dataclass
class HomotopyVerdict:
    status: Status
    explored: int
    certificate: Homotopy | None = None

    @property
    def homotopic(self) -> bool:
        return self.status is Status.HOMOTOPIC

    def to_json(self) -> dict:
        doc = {"status": self.status.value, "explored": self.explored}
        if self.certificate is not None:
            doc["certificate"] = self.certificate.to_json()
        return doc


def one_step(f: DigraphMap, g: DigraphMap, orient: str) -> bool:
    """f and g are joined by a single + (f→g) or − (g→f) step."""
    if f.domain != g.domain or f.codomain != g.codomain:
        raise DomainMismatch("maps must share domain and codomain")
    E = f.codomain.edges
    for v in f.domain.vertices:
        a, b = f(v), g(v)
        if a == b:
            continue
        if orient == "+" and (a, b) not in E:
            return False
        if orient == "-" and (b, a) not in E:
            return False
    return True


def verify_homotopy(h: Homotopy) -> bool:
    for fr in h.frames:
        if fr.domain != h.domain or fr.codomain != h.codomain or not fr.is_valid():
            return False
    return all(one_step(a, b, c) for a, b, c in zip(h.frames, h.frames[1:], h.line.word))


def verify_homotopy_assembled(h: Homotopy) -> bool:
    """Same answer as verify_homotopy, by validating F on G □ I_n directly."""
    P, a = h.assembled()
    try:
        validate_map(a, P, h.codomain)
    except DigraphError:
        return False
    return True


# -- map space search -------------------------------------------------------

class _MapSpace:
    """Digraph maps G → H encoded as tuples of codomain indices."""

    def __init__(self, G: Digraph, H: Digraph):
        self.G, self.H = G, H
        self.hv = list(H.vertices)
        self.hidx = {h: i for i, h in enumerate(self.hv)}
        self.gv = list(G.vertices)
        gidx = {g: i for i, g in enumerate(self.gv)}
        n = len(self.hv)
        self.adj = [[False] * n for _ in range(n)]
        for u, v in H.edges:
            self.adj[self.hidx[u]][self.hidx[v]] = True
        self.out = [[j for j in range(n) if self.adj[i][j]] for i in range(n)]
        self.inn = [[j for j in range(n) if self.adj[j][i]] for i in range(n)]
        # edge constraints checked once both endpoints are assigned
        self.checks: list[list[tuple[int, bool]]] = [[] for _ in self.gv]
        for u, v in G.edges:
            iu, iv = gidx[u], gidx[v]
            hi, lo = max(iu, iv), min(iu, iv)
            self.checks[hi].append((lo, iu < iv))

    def encode(self, f: DigraphMap) -> tuple[int, ...]:
        return tuple(self.hidx[f(g)] for g in self.gv)

    def decode(self, t: Sequence[int]) -> DigraphMap:
        return DigraphMap(self.G, self.H, {g: self.hv[i] for g, i in zip(self.gv, t)})

    def _ok(self, a: int, b: int) -> bool:
        return a == b or self.adj[a][b]

    def maps(self, choices: Sequence[Sequence[int]] | None = None) -> Iterator[tuple[int, ...]]:
        """All digraph maps, optionally restricting vertex i to choices[i]."""
        n = len(self.gv)
        allv = range(len(self.hv))
        cur = [0] * n

        def rec(i):
            if i == n:
                yield tuple(cur)
                return
            for c in (choices[i] if choices is not None else allv):
                good = True
                for lo, forward in self.checks[i]:
                    if forward and not self._ok(cur[lo], c):
                        good = False
                        break
                    if not forward and not self._ok(c, cur[lo]):
                        good = False
                        break
                if good:
                    cur[i] = c
                    yield from rec(i + 1)

        yield from rec(0)

    def neighbours(self, t: tuple[int, ...]) -> Iterator[tuple[tuple[int, ...], str]]:
        seen = {t}
        for orient, step in (("+", self.out), ("-", self.inn)):
            choices = [[x] + step[x] for x in t]
            for s in self.maps(choices):
                if s not in seen:
                    seen.add(s)
                    yield s, orient


def _path_to_homotopy(space: _MapSpace, parents: dict, end: tuple) -> Homotopy:
    chain, word = [end], []
    cur = end
    while parents[cur] is not None:
        prev, orient = parents[cur]
        chain.append(prev)
        word.append(orient)
        cur = prev
    chain.reverse()
    word.reverse()
    frames = tuple(space.decode(t) for t in chain)
    return Homotopy(space.G, space.H, LineDigraph("".join(word)), frames)


def _bfs(space: _MapSpace, start: tuple, targets: set, budget: int):
    parents = {start: None}
    if start in targets:
        return start, parents, True
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for nxt, orient in space.neighbours(cur):
            if nxt in parents:
                continue
            parents[nxt] = (cur, orient)
            if nxt in targets:
                return nxt, parents, True
            if len(parents) >= budget:
                return None, parents, False
            queue.append(nxt)
    return None, parents, True


def _check_pair(f: DigraphMap, g: DigraphMap):
    if f.domain != g.domain or f.codomain != g.codomain:
        raise DomainMismatch("maps must share domain and codomain")


def decide_homotopic(f: DigraphMap, g: DigraphMap, budget: int = DEFAULT_BUDGET) -> HomotopyVerdict:
    _check_pair(f, g)
    space = _MapSpace(f.domain, f.codomain)
    hit, parents, complete = _bfs(space, space.encode(f), {space.encode(g)}, budget)
    if hit is not None:
        return HomotopyVerdict(Status.HOMOTOPIC, len(parents), _path_to_homotopy(space, parents, hit))
    status = Status.NOT_HOMOTOPIC if complete else Status.BUDGET_EXCEEDED
    return HomotopyVerdict(status, len(parents))


def is_contractible(G: Digraph, budget: int = DEFAULT_BUDGET) -> HomotopyVerdict:
    """Search from id_G for any constant map (one search covers every constant)."""
    if not G.vertices:
        raise EmptyDigraph("contractibility is undefined for the empty digraph")
    space = _MapSpace(G, G)
    consts = {tuple([i] * len(G.vertices)) for i in range(len(G.vertices))}
    hit, parents, complete = _bfs(space, space.encode(identity(G)), consts, budget)
    if hit is not None:
        return HomotopyVerdict(Status.HOMOTOPIC, len(parents), _path_to_homotopy(space, parents, hit))
    return HomotopyVerdict(Status.NOT_HOMOTOPIC if complete else Status.BUDGET_EXCEEDED, len(parents))


def homotopy_class(f: DigraphMap, budget: int = DEFAULT_BUDGET) -> tuple[set[DigraphMap], bool]:
    """All maps homotopic to f; the flag is False if the budget cut the search short."""
    space = _MapSpace(f.domain, f.codomain)
    _, parents, complete = _bfs(space, space.encode(f), set(), budget)
    return {space.decode(t) for t in parents}, complete


def all_maps(G: Digraph, H: Digraph) -> Iterator[DigraphMap]:
    space = _MapSpace(G, H)
    for t in space.maps():
        yield space.decode(t)


def homotopy_classes(G: Digraph, H: Digraph, budget: int = DEFAULT_BUDGET) -> list[list[DigraphMap]]:
    """Partition of all digraph maps G → H into homotopy classes."""
    space = _MapSpace(G, H)
    remaining = set(space.maps())
    classes = []
    spent = 0
    while remaining:
        start = min(remaining)
        _, parents, complete = _bfs(space, start, set(), budget - spent)
        spent += len(parents)
        if not complete:
            raise RuntimeError("budget exceeded while partitioning maps")
        remaining -= parents.keys()
        classes.append(sorted((space.decode(t) for t in parents), key=lambda m: m.as_tuple()))
    return classes


# -- homotopy equivalence -----------------------------------------------------

@dataclass
class EquivalenceVerdict:
    status: Status
    explored: int
    witness: tuple[DigraphMap, DigraphMap] | None = None
    certificates: tuple[Homotopy, Homotopy] | None = None

    @property
    def equivalent(self) -> bool:
        return self.status is Status.HOMOTOPIC

    def to_json(self) -> dict:
        doc = {"status": self.status.value, "explored": self.explored}
        if self.witness:
            doc["witness"] = {"g": dict(self.witness[0].assignment), "h": dict(self.witness[1].assignment)}
        if self.certificates:
            doc["certificates"] = [c.to_json() for c in self.certificates]
        return doc


def homotopy_equivalent(G: Digraph, H: Digraph, budget: int = DEFAULT_BUDGET,
                        candidates: Sequence[tuple[DigraphMap, DigraphMap]] = ()) -> EquivalenceVerdict:
    """Search for g: G → H, h: H → G with h∘g ≃ id_G and g∘h ≃ id_H.

    Candidate pairs are tried first. The exhaustive fallback enumerates the
    homotopy classes of both identities and every pair of maps, so it is only
    practical for very small digraphs.
    """
    explored = 0
    for g, h in candidates:
        a = decide_homotopic(h.compose(g), identity(G), budget)
        explored += a.explored
        if not a.homotopic:
            continue
        b = decide_homotopic(g.compose(h), identity(H), budget)
        explored += b.explored
        if b.homotopic:
            return EquivalenceVerdict(Status.HOMOTOPIC, explored, (g, h), (a.certificate, b.certificate))

    sG, sH = _MapSpace(G, G), _MapSpace(H, H)
    _, pG, okG = _bfs(sG, sG.encode(identity(G)), set(), budget)
    _, pH, okH = _bfs(sH, sH.encode(identity(H)), set(), budget)
    explored += len(pG) + len(pH)
    if not (okG and okH):
        return EquivalenceVerdict(Status.BUDGET_EXCEEDED, explored)
    gh, hg = _MapSpace(G, H), _MapSpace(H, G)
    hs = list(hg.maps())
    for g in gh.maps():
        for h in hs:
            explored += 1
            if explored > budget:
                return EquivalenceVerdict(Status.BUDGET_EXCEEDED, explored)
            if tuple(h[i] for i in g) in pG and tuple(g[i] for i in h) in pH:
                gm, hm = gh.decode(g), hg.decode(h)
                a = decide_homotopic(hm.compose(gm), identity(G), budget)
                b = decide_homotopic(gm.compose(hm), identity(H), budget)
                return EquivalenceVerdict(Status.HOMOTOPIC, explored, (gm, hm), (a.certificate, b.certificate))
    return EquivalenceVerdict(Status.NOT_HOMOTOPIC, explored)


# -- homotopy extension ----------------------------------------------------

@dataclass
class Rejection:
    level: int
    vertex: str
    value: str
    violated: list[tuple[str, str]] = field(default_factory=list)


def hep_extension_search(G: Digraph, X: Digraph, f: DigraphMap, F: Homotopy,
                         trace: list[Rejection] | None = None) -> Homotopy | None:
    """Try to extend a homotopy on X ⊆ G, starting at f|X, to one on G starting at f.

    Exhaustive depth-first search over frames, one free vertex at a time. Each
    rejected value is appended to ``trace`` with the edges of G □ I_n it breaks.
    """
    H = f.codomain
    if f.domain != G or F.domain != X or F.codomain != H:
        raise InvalidRestriction("domains/codomains do not line up")
    if not (X.vertex_set <= G.vertex_set and X.edges <= G.edges):
        raise InvalidRestriction("X is not a subdigraph of G")
    if any(F.start(x) != f(x) for x in X.vertices):
        raise InvalidRestriction("F(-,0) differs from f on X")
    if not verify_homotopy(F):
        raise InvalidRestriction("F is not a homotopy on X")

    word = F.line.word
    free = [v for v in G.vertices if v not in X]
    E = H.edges

    def ok(a, b):
        return a == b or (a, b) in E

    frames: list[dict[str, str]] = [dict(f.assignment)]

    def violations(level, frame, v, val):
        bad = []
        for u, w in G.edges:
            if v not in (u, w):
                continue
            other = w if u == v else u
            if other not in frame:
                continue
            a = val if u == v else frame[u]
            b = val if w == v else frame[w]
            if not ok(a, b):
                bad.append((pair_label(u, str(level)), pair_label(w, str(level))))
        prev = frames[level - 1][v]
        step = word[level - 1]
        if step == "+" and not ok(prev, val):
            bad.append((pair_label(v, str(level - 1)), pair_label(v, str(level))))
        if step == "-" and not ok(val, prev):
            bad.append((pair_label(v, str(level)), pair_label(v, str(level - 1))))
        return bad

    def extend_level(level):
        if level > len(word):
            return True
        base = {x: F.frames[level](x) for x in X.vertices}
        return fill(level, base, 0)

    def fill(level, frame, i):
        if i == len(free):
            frames.append(dict(frame))
            if extend_level(level + 1):
                return True
            frames.pop()
            return False
        v = free[i]
        for val in H.vertices:
            bad = violations(level, frame, v, val)
            if bad:
                if trace is not None:
                    trace.append(Rejection(level, v, val, bad))
                continue
            frame[v] = val
            if fill(level, frame, i + 1):
                return True
            del frame[v]
        return False

    # the fixed X-part must itself be consistent at every level
    if not extend_level(1):
        return None
    maps = tuple(validate_map(fr, G, H) for fr in frames)
    return Homotopy(G, H, F.line, maps)
