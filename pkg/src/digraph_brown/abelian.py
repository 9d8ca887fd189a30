"""Exact integer linear algebra and finitely generated abelian groups.

Matrices are plain Python ``int`` entries (arbitrary precision). Groups are
subquotients ``L / R`` of a free ambient lattice, with ``R ⊆ L``; every group
caches a Smith basis so elements have canonical coordinates.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence


class NotASubgroup(ValueError):
    pass


class IllDefined(ValueError):
    pass


class TargetMismatch(ValueError):
    pass


class IntMatrix:
    """Dense integer matrix; rows of Python ints."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Iterable[Iterable[int]], rows: int | None = None, cols: int | None = None):
        self.data = [[int(x) for x in r] for r in data]
        self.rows = len(self.data) if rows is None else rows
        if cols is None:
            cols = len(self.data[0]) if self.data else 0
        self.cols = cols
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise ValueError("ragged matrix")

    @classmethod
    def _raw(cls, data: list[list[int]], rows: int, cols: int) -> "IntMatrix":
        """Wrap already-validated int rows without copying."""
        m = cls.__new__(cls)
        m.data, m.rows, m.cols = data, rows, cols
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        return cls([[c[i] for c in columns] for i in range(rows)], rows, len(columns))

    def copy(self) -> "IntMatrix":
        return IntMatrix(self.data, self.rows, self.cols)

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix._raw([list(c) for c in zip(*self.data)] if self.rows else [[] for _ in range(self.cols)],
                              self.cols, self.rows)

    def column(self, j: int) -> list[int]:
        return [r[j] for r in self.data]

    def columns(self) -> list[list[int]]:
        return [self.column(j) for j in range(self.cols)]

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            od, n = other.data, other.cols
            out = []
            for r in self.data:
                acc = [0] * n
                for k, a in enumerate(r):
                    if a:
                        for j, b in enumerate(od[k]):
                            if b:
                                acc[j] += a * b
                out.append(acc)
            return IntMatrix._raw(out, self.rows, n)
        v = list(other)
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return [sum(a * b for a, b in zip(r, v) if a) for r in self.data]

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.shape == other.shape and self.data == other.data

    def __neg__(self):
        return IntMatrix([[-x for x in r] for r in self.data], self.rows, self.cols)

    def __sub__(self, other: "IntMatrix"):
        return IntMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)],
                         self.rows, self.cols)

    def __add__(self, other: "IntMatrix"):
        return IntMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)],
                         self.rows, self.cols)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.data for x in r)

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return IntMatrix([a + b for a, b in zip(self.data, other.data)], self.rows, self.cols + other.cols)

    def vstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.cols:
            raise ValueError("column count mismatch")
        return IntMatrix(self.data + other.data, self.rows + other.rows, self.cols)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    def __repr__(self):
        return f"IntMatrix({self.data})"


def block_diag(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    top = [r + [0] * b.cols for r in a.data]
    bottom = [[0] * a.cols + r for r in b.data]
    return IntMatrix(top + bottom, a.rows + b.rows, a.cols + b.cols)


# -- row echelon / Hermite form ---------------------------------------------

def hermite_rows(M: IntMatrix, transform: bool = True) -> tuple[IntMatrix, IntMatrix | None, list[int]]:
    """Row-style Hermite normal form ``H = W·M`` with W unimodular.

    Nonzero rows of H come first, have positive leading entries at strictly
    increasing columns, and entries above each pivot are reduced into
    ``[0, pivot)``. Returns (H, W, pivot columns).
    """
    A = [list(r) for r in M.data]
    m, n = M.rows, M.cols
    W = [[int(i == j) for j in range(m)] for i in range(m)] if transform else None
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r >= m:
            break
        while True:
            nz = [i for i in range(r, m) if A[i][c]]
            if not nz:
                break
            # smallest magnitude, lowest row on ties
            p = min(nz, key=lambda i: (abs(A[i][c]), i))
            if p != r:
                A[p], A[r] = A[r], A[p]
                if W is not None:
                    W[p], W[r] = W[r], W[p]
            piv = A[r][c]
            done = True
            for i in range(r + 1, m):
                if A[i][c]:
                    q = A[i][c] // piv
                    if q:
                        Ai, Ar = A[i], A[r]
                        for k in range(c, n):
                            if Ar[k]:
                                Ai[k] -= q * Ar[k]
                        if W is not None:
                            Wi, Wr = W[i], W[r]
                            for k in range(m):
                                if Wr[k]:
                                    Wi[k] -= q * Wr[k]
                    if A[i][c]:
                        done = False
            if done:
                break
        if r < m and A[r][c]:
            if A[r][c] < 0:
                A[r] = [-x for x in A[r]]
                if W is not None:
                    W[r] = [-x for x in W[r]]
            piv = A[r][c]
            for i in range(r):
                q = A[i][c] // piv
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
                    if W is not None:
                        W[i] = [a - q * b for a, b in zip(W[i], W[r])]
            pivots.append(c)
            r += 1
    H = IntMatrix(A, m, n)
    return H, (IntMatrix(W, m, m) if W is not None else None), pivots


def rank(M: IntMatrix) -> int:
    return len(hermite_rows(M, transform=False)[2])


def integer_kernel(M: IntMatrix) -> IntMatrix:
    """Basis (as columns) of ``{v : M v = 0}`` over ℤ, in Hermite-reduced form.

    The basis spans a saturated lattice because it comes from rows of a
    unimodular transform.
    """
    n = M.cols
    if n == 0:
        return IntMatrix.zeros(0, 0)
    _, W, piv = hermite_rows(M.T)
    k = len(piv)
    basis = W.data[k:]
    if not basis:
        return IntMatrix.zeros(n, 0)
    Hb, _, _ = hermite_rows(IntMatrix(basis, len(basis), n), transform=False)
    return Hb.T


def lattice_basis(gens: IntMatrix) -> IntMatrix:
    """Canonical (Hermite) basis, as columns, of the lattice spanned by the columns of ``gens``."""
    if gens.cols == 0:
        return IntMatrix.zeros(gens.rows, 0)
    H, _, piv = hermite_rows(gens.T, transform=False)
    return IntMatrix(H.data[:len(piv)], len(piv), gens.rows).T


class Echelon:
    """Solver for ``B x = v`` where B has full column rank."""

    def __init__(self, B: IntMatrix):
        self.B = B
        H, W, piv = hermite_rows(B.T)
        if len(piv) != B.cols:
            raise ValueError("basis is not of full column rank")
        self.H = H.data
        self.W = W
        self.piv = piv

    def solve(self, v: Sequence[int]) -> list[int] | None:
        """Integer coordinates of v in the basis, or None if v is outside the lattice."""
        v = list(v)
        y = []
        for row, c in zip(self.H, self.piv):
            q, rem = divmod(v[c], row[c])
            if rem:
                return None
            y.append(q)
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        if any(v):
            return None
        # B^T = W^{-1} H  =>  v = B x with x = W^T y
        W = self.W.data
        x = [0] * len(y)
        for i, yi in enumerate(y):
            if yi:
                for j, w in enumerate(W[i]):
                    if w:
                        x[j] += w * yi
        return x


# -- Smith normal form ------------------------------------------------------

@dataclass
class Smith:
    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    U_inv: IntMatrix
    V_inv: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        return [self.S.data[i][i] for i in range(min(self.S.rows, self.S.cols)) if self.S.data[i][i]]


def smith_normal_form(M: IntMatrix) -> Smith:
    """``U·M·V = S`` with U, V unimodular and S diagonal, d₁ | d₂ | ….

    Pivot: smallest nonzero magnitude in the active block, lowest row then
    lowest column on ties.
    """
    m, n = M.rows, M.cols
    A = [list(r) for r in M.data]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    Ui = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    Vi = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_add(i, j, q):   # row_i -= q row_j
        A[i] = [a - q * b for a, b in zip(A[i], A[j])]
        U[i] = [a - q * b for a, b in zip(U[i], U[j])]
        for r in Ui:        # Ui <- Ui E^{-1}: col_j += q col_i
            r[j] += q * r[i]

    def col_add(i, j, q):   # col_i -= q col_j
        for r in A:
            r[i] -= q * r[j]
        for r in V:
            r[i] -= q * r[j]
        Vi[j] = [a + q * b for a, b in zip(Vi[j], Vi[i])]

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        for r in Ui:
            r[i], r[j] = r[j], r[i]

    def col_swap(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def row_neg(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]
        for r in Ui:
            r[i] = -r[i]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                a = A[i][j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
        if best is None:
            break
        _, i, j = best
        if i != t:
            row_swap(i, t)
        if j != t:
            col_swap(j, t)
        while True:
            piv = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    row_add(i, t, A[i][t] // piv)
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    col_add(j, t, A[t][j] // piv)
                    if A[t][j]:
                        dirty = True
            if not dirty:
                # divisibility: fold in any entry not divisible by the pivot
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if A[i][j] % piv), None)
                if bad is None:
                    break
                row_add(t, bad[0], -1)
                continue
            # move the smallest remaining entry of row/column t to the pivot
            cand = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
            cand += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
            _, i, j = min(cand)
            if i != t:
                row_swap(i, t)
            if j != t:
                col_swap(j, t)
        if A[t][t] < 0:
            row_neg(t)
        t += 1
    return Smith(IntMatrix(U, m, m), IntMatrix(A, m, n), IntMatrix(V, n, n),
                 IntMatrix(Ui, m, m), IntMatrix(Vi, n, n))


def invariant_factors(M: IntMatrix) -> list[int]:
    return smith_normal_form(M).diagonal


# -- groups ------------------------------------------------------------------

class FgAbGroup:
    """The subquotient ``span(L) / span(R)`` inside ℤ^n.

    ``L`` must have full column rank; every column of ``R`` must lie in the
    lattice spanned by ``L`` (checked).
    """

    def __init__(self, L: IntMatrix, R: IntMatrix):
        if L.rows != R.rows:
            raise ValueError("ambient dimensions differ")
        self.n = L.rows
        self.L = L
        self.R = R
        self._L_solver = Echelon(L) if L.cols else None
        coords = []
        for col in R.columns():
            x = self._solve_L(col)
            if x is None:
                raise NotASubgroup("relation outside the kernel lattice")
            coords.append(x)
        k = L.cols
        C = IntMatrix.from_columns(coords, k) if coords else IntMatrix.zeros(k, 0)
        sm = smith_normal_form(C)
        self._smith = sm
        d = sm.diagonal
        self.k = k
        self._d = d + [0] * (k - len(d))   # per Smith coordinate: 1 trivial, >1 torsion, 0 free

    def _solve_L(self, v):
        if self._L_solver is None:
            return [] if not any(v) else None
        return self._L_solver.solve(v)

    @cached_property
    def torsion(self) -> list[int]:
        return [d for d in self._d if d > 1]

    @cached_property
    def rank(self) -> int:
        return sum(1 for d in self._d if d == 0)

    @property
    def invariants(self) -> tuple[int, tuple[int, ...]]:
        return self.rank, tuple(self.torsion)

    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def isomorphic(self, other: "FgAbGroup") -> bool:
        return self.invariants == other.invariants

    # Smith coordinates: ℤ^k with relation d_i e_i
    @property
    def moduli(self) -> list[int]:
        return list(self._d)

    def smith_coords(self, v: Sequence[int]) -> list[int]:
        """Coordinates of an ambient vector (which must lie in L), reduced mod the relations."""
        x = self._solve_L(list(v))
        if x is None:
            raise NotASubgroup("vector does not lie in the kernel lattice")
        y = self._smith.U @ x
        return [yi % d if d else yi for yi, d in zip(y, self._d)]

    def contains(self, v: Sequence[int]) -> bool:
        return self._solve_L(list(v)) is not None

    def is_zero_element(self, v: Sequence[int]) -> bool:
        return not any(self.smith_coords(v))

    def generators(self) -> list[list[int]]:
        """Ambient representatives of the non-trivial Smith generators."""
        Ui = self._smith.U_inv
        out = []
        for i, d in enumerate(self._d):
            if d != 1:
                c = Ui.column(i)
                out.append(self.L @ c)
        return out

    def relation_lattice(self) -> IntMatrix:
        """Relations in Smith coordinates as columns: d_i e_i."""
        cols = [[d if j == i else 0 for j in range(self.k)] for i, d in enumerate(self._d) if d]
        return IntMatrix.from_columns(cols, self.k) if cols else IntMatrix.zeros(self.k, 0)

    def describe(self) -> dict:
        return {"rank": self.rank, "torsion": self.torsion}

    def __repr__(self):
        parts = ["Z"] * self.rank + [f"Z/{d}" for d in self.torsion]
        return "FgAbGroup(" + (" + ".join(parts) if parts else "0") + ")"


def subquotient(kernel_gens: IntMatrix, image_gens: IntMatrix) -> FgAbGroup:
    """Group ``span(kernel_gens) / span(image_gens)``; kernel_gens may be redundant."""
    L = lattice_basis(kernel_gens)
    return FgAbGroup(L, image_gens)


def free_group(n: int) -> FgAbGroup:
    return FgAbGroup(IntMatrix.identity(n), IntMatrix.zeros(n, 0))


def direct_sum(A: FgAbGroup, B: FgAbGroup) -> FgAbGroup:
    return FgAbGroup(block_diag(A.L, B.L), block_diag(A.R, B.R))


class Subgroup:
    """A subgroup of ``G``, stored as a lattice in G's Smith coordinates containing the relations."""

    def __init__(self, group: FgAbGroup, gens_smith: Iterable[Sequence[int]]):
        self.group = group
        gens = [list(g) for g in gens_smith]
        M = IntMatrix.from_columns(gens, group.k) if gens else IntMatrix.zeros(group.k, 0)
        M = M.hstack(group.relation_lattice())
        self.lattice = lattice_basis(M)

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.group is other.group and self.lattice == other.lattice

    def __le__(self, other: "Subgroup") -> bool:
        if other.lattice.cols == 0:
            return self.lattice.cols == 0
        solver = Echelon(other.lattice)
        return all(solver.solve(c) is not None for c in self.lattice.columns())

    def is_everything(self) -> bool:
        return self.lattice == IntMatrix.identity(self.group.k)

    def is_zero(self) -> bool:
        return self == Subgroup(self.group, [])

    def as_group(self) -> FgAbGroup:
        return FgAbGroup(self.lattice, self.group.relation_lattice())


class GroupHom:
    """Homomorphism induced by an ambient lift ``ℤ^{n_src} → ℤ^{n_tgt}``."""

    def __init__(self, lift: IntMatrix, source: FgAbGroup, target: FgAbGroup, check: bool = True):
        if lift.shape != (target.n, source.n):
            raise IllDefined(f"lift has shape {lift.shape}, expected {(target.n, source.n)}")
        self.lift = lift
        self.source = source
        self.target = target
        if check:
            for c in source.L.columns():
                if not target.contains(lift @ c):
                    raise IllDefined("lift does not carry the source lattice into the target lattice")
            for c in source.R.columns():
                w = lift @ c
                if not target.contains(w) or not target.is_zero_element(w):
                    raise IllDefined("lift does not carry relations to relations")
        # Smith-coordinate matrix: column i is the image of Smith generator i
        Ui = source._smith.U_inv
        cols = []
        for i in range(source.k):
            v = source.L @ Ui.column(i)
            cols.append(target.smith_coords(lift @ v))
        self.matrix = IntMatrix.from_columns(cols, target.k) if cols else IntMatrix.zeros(target.k, 0)

    def apply(self, v: Sequence[int]) -> list[int]:
        return self.lift @ list(v)

    def image(self) -> Subgroup:
        gens = [self.matrix.column(i) for i, d in enumerate(self.source.moduli) if d != 1]
        return Subgroup(self.target, gens)

    def kernel(self) -> Subgroup:
        """Kernel, as a subgroup of the source (in source Smith coordinates)."""
        ks, kt = self.source.k, self.target.k
        Rt = self.target.relation_lattice()
        # x ∈ ℤ^{ks} with M x ∈ span(Rt):  [M | -Rt] (x, y) = 0
        aug = self.matrix.hstack(-Rt) if Rt.cols else self.matrix
        K = integer_kernel(aug)
        gens = [c[:ks] for c in K.columns()]
        return Subgroup(self.source, gens)

    def is_surjective(self) -> bool:
        return self.image().is_everything()

    def is_injective(self) -> bool:
        return self.kernel().is_zero()

    def is_zero(self) -> bool:
        return self.image().is_zero()

    def __eq__(self, other):
        if not isinstance(other, GroupHom):
            return NotImplemented
        if self.source is not other.source and self.source.invariants != other.source.invariants:
            return False
        if self.target.k != other.target.k:
            return False
        mods = self.target.moduli
        for a, b in zip(self.matrix.columns(), other.matrix.columns()):
            if any((x - y) % d if d else x != y for x, y, d in zip(a, b, mods)):
                return False
        return True

    def compose(self, inner: "GroupHom") -> "GroupHom":
        """``self ∘ inner``."""
        return GroupHom(self.lift @ inner.lift, inner.source, self.target, check=False)


def hom_induced(lift: IntMatrix, src: FgAbGroup, tgt: FgAbGroup) -> GroupHom:
    return GroupHom(lift, src, tgt)


def product_hom(phi: GroupHom, psi: GroupHom) -> GroupHom:
    """x ↦ (φx, ψx) into the direct sum of the targets."""
    if phi.source is not psi.source and phi.source.n != psi.source.n:
        raise TargetMismatch("sources differ")
    lift = phi.lift.vstack(psi.lift)
    return GroupHom(lift, phi.source, direct_sum(phi.target, psi.target))


@dataclass
class FiberProduct:
    group: FgAbGroup          # lives inside the ambient of B ⊕ C
    ambient: FgAbGroup        # B ⊕ C
    pr1: GroupHom
    pr2: GroupHom


def fiber_product(phi: GroupHom, psi: GroupHom) -> FiberProduct:
    """``B ×_A C = {(b, c) : φ(b) = ψ(c)}`` for φ: B → A, ψ: C → A."""
    A = phi.target
    if psi.target is not A and (psi.target.n != A.n or psi.target.L != A.L or psi.target.R != A.R):
        raise TargetMismatch("φ and ψ must share a target")
    B, C = phi.source, psi.source
    BC = direct_sum(B, C)
    diff = GroupHom(phi.lift.hstack(-psi.lift), BC, A, check=False)
    ker = diff.kernel()
    # back from Smith coordinates of B ⊕ C to ambient vectors
    Ui = BC._smith.U_inv
    gens = [BC.L @ (Ui @ c) for c in ker.lattice.columns()]
    Lgens = IntMatrix.from_columns(gens, BC.n) if gens else IntMatrix.zeros(BC.n, 0)
    Lgens = Lgens.hstack(BC.R)
    G = FgAbGroup(lattice_basis(Lgens), BC.R)
    nb = B.n
    pr1 = GroupHom(IntMatrix([[int(i == j) for j in range(BC.n)] for i in range(nb)], nb, BC.n), G, B)
    pr2 = GroupHom(IntMatrix([[int(i + nb == j) for j in range(BC.n)] for i in range(C.n)], C.n, BC.n), G, C)
    return FiberProduct(G, BC, pr1, pr2)


def hom_into_fiber_product(h1: GroupHom, h2: GroupHom, fp: FiberProduct) -> GroupHom:
    """x ↦ (h1 x, h2 x) as a map into the fiber product (raises IllDefined if it misses)."""
    lift = h1.lift.vstack(h2.lift)
    return GroupHom(lift, h1.source, fp.group)


def is_surjective(h: GroupHom) -> bool:
    return h.is_surjective()
