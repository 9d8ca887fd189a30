"""Path chain complex Ω_•(G), its homology and the dual cohomology over ℤ."""
from __future__ import annotations

from dataclasses import dataclass, field

from .abelian import (
    Echelon, FgAbGroup, GroupHom, IntMatrix, integer_kernel, lattice_basis, subquotient,
)
from .digraph import Digraph, DigraphMap

DEFAULT_PMAX = 3
DEFAULT_PATH_CAP = 200_000

Path = tuple[str, ...]


class PathExplosion(RuntimeError):
    pass


class ChainMapViolation(AssertionError):
    pass


@dataclass
class AllowedPathIndex:
    paths: list[list[Path]]                     # per degree, lexicographic
    position: list[dict[Path, int]] = field(default_factory=list)

    def __post_init__(self):
        if not self.position:
            self.position = [{p: i for i, p in enumerate(ps)} for ps in self.paths]

    @property
    def top(self) -> int:
        return len(self.paths) - 1


def enumerate_allowed_paths(G: Digraph, p_max: int, cap: int = DEFAULT_PATH_CAP) -> AllowedPathIndex:
    """Allowed paths of degrees 0 … p_max+1 (the extra degree feeds d^{p_max})."""
    if p_max < 0:
        raise ValueError("p_max must be non-negative")
    level: list[Path] = [(v,) for v in G.vertices]
    out = [level]
    total = len(level)
    for _ in range(p_max + 1):
        nxt = [p + (w,) for p in level for w in G.out_neighbors(p[-1])]
        total += len(nxt)
        if total > cap:
            raise PathExplosion(f"more than {cap} allowed paths up to degree {len(out)}")
        nxt.sort()
        out.append(nxt)
        level = nxt
    return AllowedPathIndex(out)


def boundary_terms(path: Path) -> list[tuple[int, Path]]:
    """Regular terms of ∂ e_path: deletions leaving equal neighbours are dropped."""
    terms = []
    for k in range(len(path)):
        q = path[:k] + path[k + 1:]
        if any(q[i] == q[i + 1] for i in range(len(q) - 1)):
            continue
        terms.append(((-1) ** k, q))
    return terms


@dataclass
class BoundaryBlocks:
    """∂ on allowed p-paths split by whether each target is allowed."""
    allowed: IntMatrix             # rows: allowed (p-1)-paths
    non_allowed: IntMatrix         # rows: non-allowed regular (p-1)-paths
    non_allowed_rows: list[Path]


def boundary_on_allowed(index: AllowedPathIndex, p: int) -> BoundaryBlocks:
    src = index.paths[p]
    if p == 0:
        return BoundaryBlocks(IntMatrix.zeros(0, len(src)), IntMatrix.zeros(0, len(src)), [])
    tgt_pos = index.position[p - 1]
    allowed = [[0] * len(src) for _ in range(len(index.paths[p - 1]))]
    na_pos: dict[Path, int] = {}
    na_entries: list[tuple[int, int, int]] = []
    for j, path in enumerate(src):
        for s, q in boundary_terms(path):
            i = tgt_pos.get(q)
            if i is not None:
                allowed[i][j] += s
            else:
                r = na_pos.setdefault(q, len(na_pos))
                na_entries.append((r, j, s))
    rows = sorted(na_pos, key=na_pos.get)
    order = sorted(range(len(rows)), key=lambda r: rows[r])
    rank_of = {r: n for n, r in enumerate(order)}
    na = [[0] * len(src) for _ in rows]
    for r, j, s in na_entries:
        na[rank_of[r]][j] += s
    return BoundaryBlocks(IntMatrix(allowed, len(allowed), len(src)),
                          IntMatrix(na, len(na), len(src)), sorted(rows))


def _block_kernel(N: IntMatrix) -> list[list[int]]:
    """Kernel of N, computed blockwise over connected groups of columns."""
    n = N.cols
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for row in N.data:
        nz = [j for j, a in enumerate(row) if a]
        for j in nz[1:]:
            a, b = find(nz[0]), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for j in range(n):
        groups.setdefault(find(j), []).append(j)
    by_group: dict[int, list[list[int]]] = {}
    for row in N.data:
        j = next((j for j, a in enumerate(row) if a), None)
        if j is not None:
            by_group.setdefault(find(j), []).append(row)
    basis = []
    for root, cols in groups.items():
        rows = by_group.get(root, [])
        if not rows:
            for j in cols:
                v = [0] * n
                v[j] = 1
                basis.append(v)
            continue
        sub = IntMatrix([[r[j] for j in cols] for r in rows], len(rows), len(cols))
        for kc in integer_kernel(sub).columns():
            v = [0] * n
            for j, a in zip(cols, kc):
                v[j] = a
            basis.append(v)
    return basis


@dataclass
class OmegaBasis:
    index: AllowedPathIndex
    bases: list[IntMatrix]          # columns span Ω_p in allowed-path coordinates
    boundaries: list[IntMatrix]     # D_p : Ω_p → Ω_{p-1} in these bases (D_0 is 0 × rank Ω_0)
    solvers: list[Echelon | None]

    def rank(self, p: int) -> int:
        return self.bases[p].cols

    def coordinates(self, p: int, v) -> list[int] | None:
        s = self.solvers[p]
        if s is None:
            return [] if not any(v) else None
        return s.solve(v)


def omega_basis(G: Digraph, p_max: int = DEFAULT_PMAX, cap: int = DEFAULT_PATH_CAP) -> OmegaBasis:
    """Hermite-reduced integer bases of Ω_p for p ≤ p_max+1 and the boundary matrices."""
    index = enumerate_allowed_paths(G, p_max, cap)
    bases, bounds, solvers = [], [], []
    for p in range(index.top + 1):
        blocks = boundary_on_allowed(index, p)
        npaths = len(index.paths[p])
        if p <= 1:
            B = IntMatrix.identity(npaths)
        else:
            ker = _block_kernel(blocks.non_allowed)
            B = lattice_basis(IntMatrix.from_columns(ker, npaths)) if ker else IntMatrix.zeros(npaths, 0)
        solver = Echelon(B) if B.cols else None
        if p == 0:
            D = IntMatrix.zeros(0, B.cols)
        else:
            img = blocks.allowed @ B
            cols = []
            for c in img.columns():
                x = (solvers[p - 1].solve(c) if solvers[p - 1] else ([] if not any(c) else None))
                if x is None:
                    raise ChainMapViolation(f"∂ of an Ω_{p} basis element leaves Ω_{p-1}")
                cols.append(x)
            D = IntMatrix.from_columns(cols, bases[p - 1].cols) if cols else IntMatrix.zeros(bases[p - 1].cols, 0)
        bases.append(B)
        bounds.append(D)
        solvers.append(solver)
    return OmegaBasis(index, bases, bounds, solvers)


@dataclass
class CohomologyResult:
    digraph: Digraph
    p_max: int
    omega: OmegaBasis
    groups: list[FgAbGroup]          # H^p for p ≤ p_max
    coboundaries: list[IntMatrix]    # d^p = D_{p+1}^T : Ω^p → Ω^{p+1}

    def __getitem__(self, p: int) -> FgAbGroup:
        return self.groups[p]

    def records(self) -> list[dict]:
        return [{"degree": p, **g.describe()} for p, g in enumerate(self.groups)]


@dataclass
class HomologyResult:
    digraph: Digraph
    p_max: int
    omega: OmegaBasis
    groups: list[FgAbGroup]

    def __getitem__(self, p: int) -> FgAbGroup:
        return self.groups[p]

    def records(self) -> list[dict]:
        return [{"degree": p, **g.describe()} for p, g in enumerate(self.groups)]


def cohomology(G: Digraph, p_max: int = DEFAULT_PMAX, omega: OmegaBasis | None = None) -> CohomologyResult:
    om = omega or omega_basis(G, p_max)
    d = [om.boundaries[p + 1].T for p in range(p_max + 1)]
    groups = []
    for p in range(p_max + 1):
        n = om.rank(p)
        ker = integer_kernel(d[p]) if n else IntMatrix.zeros(0, 0)
        im = d[p - 1] if p > 0 else IntMatrix.zeros(n, 0)
        groups.append(subquotient(ker, im))
    return CohomologyResult(G, p_max, om, groups, d)


def homology(G: Digraph, p_max: int = DEFAULT_PMAX, omega: OmegaBasis | None = None) -> HomologyResult:
    om = omega or omega_basis(G, p_max)
    groups = []
    for p in range(p_max + 1):
        n = om.rank(p)
        D = om.boundaries[p]
        ker = integer_kernel(D) if n else IntMatrix.zeros(0, 0)
        if p == 0:
            ker = IntMatrix.identity(n)
        groups.append(subquotient(ker, om.boundaries[p + 1]))
    return HomologyResult(G, p_max, om, groups)


def pushforward(f: DigraphMap, src: OmegaBasis, tgt: OmegaBasis, p: int) -> IntMatrix:
    """f_# : Ω_p(G) → Ω_p(H) in Ω bases; degenerate images vanish."""
    a = f.assignment
    tgt_pos = tgt.index.position[p]
    ntgt = len(tgt.index.paths[p])
    cols = []
    for c in src.bases[p].columns():
        v = [0] * ntgt
        for coef, path in zip(c, src.index.paths[p]):
            if not coef:
                continue
            img = tuple(a[x] for x in path)
            if any(img[i] == img[i + 1] for i in range(len(img) - 1)):
                continue
            i = tgt_pos.get(img)
            if i is None:
                raise ChainMapViolation(f"{img} is not allowed in the codomain")
            v[i] += coef
        x = tgt.coordinates(p, v)
        if x is None:
            raise ChainMapViolation(f"f_# leaves Ω_{p}")
        cols.append(x)
    return IntMatrix.from_columns(cols, tgt.rank(p)) if cols else IntMatrix.zeros(tgt.rank(p), 0)


def induced_cochain_map(f: DigraphMap, src: CohomologyResult, tgt: CohomologyResult) -> list[GroupHom]:
    """f^* : H^p(codomain) → H^p(domain) for p ≤ min p_max.

    ``src`` is the cohomology of the codomain, ``tgt`` that of the domain.
    """
    if src.digraph != f.codomain or tgt.digraph != f.domain:
        raise ValueError("cohomology results do not match the map")
    top = min(src.p_max, tgt.p_max)
    P = [pushforward(f, tgt.omega, src.omega, p) for p in range(top + 2)]
    for p in range(1, top + 2):
        lhs = src.omega.boundaries[p] @ P[p]
        rhs = P[p - 1] @ tgt.omega.boundaries[p]
        if lhs != rhs:
            raise ChainMapViolation(f"f_# does not commute with ∂ in degree {p}")
    return [GroupHom(P[p].T, src.groups[p], tgt.groups[p]) for p in range(top + 1)]


def induced_chain_map(f: DigraphMap, src: HomologyResult, tgt: HomologyResult) -> list[GroupHom]:
    """f_* : H_p(domain) → H_p(codomain)."""
    top = min(src.p_max, tgt.p_max)
    P = [pushforward(f, src.omega, tgt.omega, p) for p in range(top + 1)]
    return [GroupHom(P[p], src.groups[p], tgt.groups[p]) for p in range(top + 1)]


def h0_component_check(G: Digraph, m: int = 2, budget: int = 10**6) -> bool:
    """rank H⁰ equals the component count, and [G, m isolated points] has m^k classes."""
    from .homotopy import homotopy_classes
    from .digraph import edgeless

    k = len(G.components())
    h0 = cohomology(G, 0)[0]
    if h0.rank != k or h0.torsion:
        return False
    if m <= 0:
        return True
    target = edgeless(str(i) for i in range(m))
    classes = homotopy_classes(G, target, budget)
    return len(classes) == m ** k
