import itertools
import math

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st
from sympy.matrices.normalforms import invariant_factors as sympy_invariants

from conftest import matrices
from oracles import bareiss_rank
from digraph_brown.abelian import (
    Echelon, FgAbGroup, GroupHom, IllDefined, IntMatrix, NotASubgroup, TargetMismatch, fiber_product, free_group,
    hermite_rows, hom_induced, integer_kernel, invariant_factors, lattice_basis, rank, smith_normal_form,
    subquotient,
)


def M(rows, m=None, n=None):
    return IntMatrix(rows, m, n)


def cyclic(m: int) -> FgAbGroup:
    """ℤ/m (ℤ for m = 0) presented inside ℤ."""
    return subquotient(IntMatrix.identity(1), IntMatrix([[m]] if m else [[]], 1, 1 if m else 0))


def diag_group(mods) -> FgAbGroup:
    n = len(mods)
    R = IntMatrix([[mods[i] if i == j else 0 for j in range(n)] for i in range(n)], n, n)
    return subquotient(IntMatrix.identity(n), R)


def sym(A: IntMatrix):
    return sp.Matrix(A.rows, A.cols, lambda i, j: A.data[i][j])


# -- Smith / Hermite ---------------------------------------------------------

def test_snf_examples():
    assert invariant_factors(IntMatrix.zeros(2, 3)) == []
    z = smith_normal_form(IntMatrix.zeros(2, 2))
    assert z.U == IntMatrix.identity(2) and z.V == IntMatrix.identity(2)
    assert invariant_factors(M([[2, 4], [6, 8]])) == [2, 4]
    assert smith_normal_form(IntMatrix.identity(3)).S == IntMatrix.identity(3)


def check_snf(A: IntMatrix):
    s = smith_normal_form(A)
    assert s.U @ A @ s.V == s.S
    assert abs(sym(s.U).det()) == 1 if A.rows else True
    assert abs(sym(s.V).det()) == 1 if A.cols else True
    assert s.U @ s.U_inv == IntMatrix.identity(A.rows)
    assert s.V @ s.V_inv == IntMatrix.identity(A.cols)
    for i in range(s.S.rows):
        for j in range(s.S.cols):
            if i != j:
                assert s.S.data[i][j] == 0
    d = s.diagonal
    assert all(x > 0 for x in d)
    assert all(b % a == 0 for a, b in zip(d, d[1:]))
    # only the leading diagonal block is nonzero
    assert len(d) == rank(A)
    return d


@given(matrices())
def test_snf_properties(mat):
    rows, m, n = mat
    A = IntMatrix(rows, m, n)
    d = check_snf(A)
    if m and n:
        assert d == [x for x in sympy_invariants(sym(A), domain=sp.ZZ) if x]
    assert len(d) == bareiss_rank(rows)


@given(matrices())
def test_hermite_rows(mat):
    rows, m, n = mat
    A = IntMatrix(rows, m, n)
    H, W, piv = hermite_rows(A)
    assert W @ A == H
    if m:
        assert abs(sym(W).det()) == 1
    assert piv == sorted(piv) and len(piv) == bareiss_rank(rows)
    for r, c in enumerate(piv):
        assert H.data[r][c] > 0
        assert all(H.data[i][c] == 0 for i in range(r + 1, m))
        assert all(0 <= H.data[i][c] < H.data[r][c] for i in range(r))


# -- kernels and lattices ------------------------------------------------------

def test_kernel_examples():
    K = integer_kernel(M([[1, 1]]))
    assert K.cols == 1 and sorted(map(abs, K.column(0))) == [1, 1] and sum(K.column(0)) == 0
    assert integer_kernel(IntMatrix.identity(3)).cols == 0
    # ∂₁ of the cyclic triangle, columns ab, bc, ca; rows a, b, c
    d1 = M([[-1, 0, 1], [1, -1, 0], [0, 1, -1]])
    K = integer_kernel(d1)
    assert K.cols == 1 and set(K.column(0)) in ({1}, {-1})


@given(matrices(max_rows=4, max_cols=6))
def test_kernel_is_saturated_basis(mat):
    rows, m, n = mat
    A = IntMatrix(rows, m, n)
    K = integer_kernel(A)
    assert (A @ K).is_zero()
    assert K.cols == n - bareiss_rank(rows)
    assert rank(K) == K.cols
    if K.cols:
        # saturated: every invariant factor of the basis is 1
        assert all(x == 1 for x in sympy_invariants(sym(K), domain=sp.ZZ))
        # every rational kernel vector, cleared of denominators, lies in the lattice
        solver = Echelon(K)
        for v in sym(A).nullspace() if m else list(sp.eye(n).columnspace()):
            den = math.lcm(*[x.q for x in v])
            w = [int(x * den) for x in v]
            assert solver.solve(w) is not None


@given(matrices(max_rows=4, max_cols=4))
def test_lattice_basis_spans_same_lattice(mat):
    rows, m, n = mat
    A = IntMatrix(rows, m, n)
    B = lattice_basis(A)
    assert B.cols == bareiss_rank(rows)
    if B.cols:
        s = Echelon(B)
        assert all(s.solve(c) is not None for c in A.columns())
    if A.cols and B.cols:
        sa = Echelon(lattice_basis(A))
        assert all(sa.solve(c) is not None for c in B.columns())


# -- groups --------------------------------------------------------------------

def test_subquotient_examples():
    assert subquotient(IntMatrix.identity(2), IntMatrix.zeros(2, 0)).invariants == (2, ())
    assert cyclic(2).invariants == (0, (2,))
    g = subquotient(M([[1], [1]]), M([[2], [2]]))
    assert g.invariants == (0, (2,))
    with pytest.raises(NotASubgroup):
        subquotient(M([[1], [1]]), M([[1], [0]]))


def test_hom_examples():
    Z = free_group(1)
    ident = hom_induced(IntMatrix.identity(1), Z, Z)
    assert ident.is_surjective() and ident.is_injective()
    zero = hom_induced(IntMatrix.zeros(1, 1), Z, Z)
    assert zero.is_zero()
    double = hom_induced(M([[2]]), Z, Z)
    assert double.matrix == M([[2]]) and not double.is_surjective() and double.is_injective()
    Z2 = free_group(2)
    assert hom_induced(M([[1, 1]]), Z2, Z).is_surjective()
    with pytest.raises(IllDefined):
        hom_induced(M([[1]]), cyclic(2), cyclic(3))


def test_fiber_product_examples():
    Z = free_group(1)
    two = hom_induced(M([[2]]), Z, Z)
    three = hom_induced(M([[3]]), Z, Z)
    fp = fiber_product(two, three)
    assert fp.group.invariants == (1, ())
    gen = fp.group.generators()[0]
    assert gen in ([3, 2], [-3, -2])
    ident = hom_induced(IntMatrix.identity(1), Z, Z)
    assert fiber_product(two, ident).group.invariants == (1, ())
    zero = hom_induced(IntMatrix.zeros(1, 1), Z, Z)
    assert fiber_product(zero, zero).group.invariants == (2, ())
    with pytest.raises(TargetMismatch):
        fiber_product(two, hom_induced(M([[1], [0]]), Z, free_group(2)))


@given(st.lists(st.integers(1, 6), min_size=1, max_size=2), st.lists(st.integers(1, 6), min_size=1, max_size=2),
       st.integers(1, 6), st.data())
def test_fiber_product_order_brute_force(bm, cm, am, data):
    """|B ×_A C| equals the count of matching pairs, for finite cyclic sums."""
    def hom_to_A(ms):
        # x_i ↦ k_i x_i is well defined into ℤ/am iff am | k_i m_i
        ks = [data.draw(st.sampled_from([k for k in range(am) if (k * m) % am == 0] or [0])) for m in ms]
        return ks

    B, C, A = diag_group(bm), diag_group(cm), diag_group([am])
    kb, kc = hom_to_A(bm), hom_to_A(cm)
    phi = GroupHom(IntMatrix([kb], 1, len(bm)), B, A)
    psi = GroupHom(IntMatrix([kc], 1, len(cm)), C, A)
    fp = fiber_product(phi, psi)
    count = sum(1 for b in itertools.product(*[range(m) for m in bm])
                for c in itertools.product(*[range(m) for m in cm])
                if (sum(k * x for k, x in zip(kb, b)) - sum(k * x for k, x in zip(kc, c))) % am == 0)
    order = 1
    for d in fp.group.torsion:
        order *= d
    assert fp.group.rank == 0 and order == count
    # projections commute with the structure maps
    assert phi.compose(fp.pr1) == psi.compose(fp.pr2)


@given(st.lists(st.integers(0, 6), min_size=1, max_size=3), st.data())
def test_image_kernel_orders(mods, data):
    """|im| · |ker| = |source| for endomorphisms of finite groups."""
    mods = [m or 1 for m in mods]
    n = len(mods)
    G = diag_group(mods)
    lift = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            # x_j ↦ k x_j in coordinate i needs m_i | k m_j
            opts = [k for k in range(mods[i]) if (k * mods[j]) % mods[i] == 0]
            lift[i][j] = data.draw(st.sampled_from(opts))
    h = GroupHom(IntMatrix(lift, n, n), G, G)
    img = h.image().as_group()
    ker = h.kernel().as_group()

    def order(g):
        o = 1
        for d in g.torsion:
            o *= d
        return o

    total = 1
    for m in mods:
        total *= m
    assert order(img) * order(ker) == total
    # brute force over ambient representatives
    images = {tuple(G.smith_coords(h.apply(x))) for x in itertools.product(*[range(m) for m in mods])}
    assert len(images) == order(img)
