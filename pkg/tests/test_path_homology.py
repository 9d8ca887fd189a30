import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import digraphs
from oracles import omega_dims_and_ranks, rational_betti
from digraph_brown.digraph import EMPTY, POINT, Digraph, cycle, edgeless, identity, line, validate_map
from digraph_brown.path_homology import (
    PathExplosion, boundary_terms, cohomology, enumerate_allowed_paths, h0_component_check, homology,
    induced_chain_map, induced_cochain_map, omega_basis,
)
from digraph_brown.random_gen import random_digraph, random_map, random_step

CYCLIC = Digraph.build("abc", [("a", "b"), ("b", "c"), ("c", "a")])
TRANSITIVE = Digraph.build("abc", [("a", "b"), ("b", "c"), ("a", "c")])
SQUARE = Digraph.build("abcd", [("a", "b"), ("b", "d"), ("a", "c"), ("c", "d")])


def ranks(G, p_max=2):
    return [g.rank for g in cohomology(G, p_max).groups]


def test_boundary_terms_drop_irregular():
    assert boundary_terms(("a", "b", "c")) == [(1, ("b", "c")), (-1, ("a", "c")), (1, ("a", "b"))]
    # deleting the middle of a→b→a leaves a, a
    assert (-1, ("a", "a")) not in boundary_terms(("a", "b", "a"))


def test_omega_low_degrees():
    for G in (CYCLIC, TRANSITIVE, SQUARE, cycle(4)):
        om = omega_basis(G, 1)
        assert om.rank(0) == len(G.vertices)
        assert om.rank(1) == len(G.edges)
    assert omega_basis(CYCLIC, 1).rank(2) == 0
    assert omega_basis(TRANSITIVE, 1).rank(2) == 1
    assert omega_basis(SQUARE, 1).rank(2) == 1


def test_ground_truths():
    assert ranks(POINT) == [1, 0, 0]
    assert ranks(edgeless("ab")) == [2, 0, 0]
    assert ranks(line("+-+")) == [1, 0, 0]
    assert ranks(CYCLIC) == [1, 1, 0]
    assert ranks(TRANSITIVE) == [1, 0, 0]
    assert ranks(SQUARE) == [1, 0, 0]
    assert ranks(cycle(4)) == [1, 1, 0]
    assert ranks(Digraph.build("ab", [("a", "b"), ("b", "a")])) == [1, 0, 0]
    assert cohomology(EMPTY, 1).groups[0].is_trivial()


@given(digraphs(max_vertices=5))
def test_rational_oracle_agreement(G):
    top = 2
    co = cohomology(G, top)
    ho = homology(G, top)
    betti = rational_betti(G.vertices, G.sorted_edges, top)
    assert [g.rank for g in co.groups] == betti
    assert [g.rank for g in ho.groups] == betti
    dims, _ = omega_dims_and_ranks(list(G.vertices), G.sorted_edges, top)
    assert [co.omega.rank(p) for p in range(top + 2)] == dims


@given(digraphs(max_vertices=5))
def test_h1_torsion_free_and_h0_counts_components(G):
    co = cohomology(G, 1)
    assert not co[1].torsion
    assert co[0].rank == len(G.components()) and not co[0].torsion


@given(digraphs(min_vertices=1, max_vertices=4))
def test_h0_component_check(G):
    assert h0_component_check(G, m=2)


def test_path_explosion():
    K = Digraph.build("abcdef", [(u, v) for u in "abcdef" for v in "abcdef" if u != v])
    with pytest.raises(PathExplosion):
        enumerate_allowed_paths(K, 6, cap=1000)
    with pytest.raises(ValueError):
        enumerate_allowed_paths(K, -1)


def test_identity_and_constant_induce_expected_maps():
    C = cycle(4)
    co = cohomology(C, 1)
    ident = induced_cochain_map(identity(C), co, co)
    assert all(h.is_surjective() and h.is_injective() for h in ident)
    const = validate_map({v: "0" for v in C.vertices}, C, C)
    assert induced_cochain_map(const, co, co)[1].is_zero()
    ho = homology(C, 1)
    assert induced_chain_map(identity(C), ho, ho)[1].is_injective()


def test_induced_map_checks_its_arguments():
    co = cohomology(CYCLIC, 1)
    with pytest.raises(ValueError):
        induced_cochain_map(identity(SQUARE), co, co)


@given(st.integers(0, 10**6))
def test_functoriality(seed):
    r = random.Random(seed)
    A = random_digraph(r, 1, 4, prefix="a")
    B = random_digraph(r, 1, 4, prefix="b")
    C = random_digraph(r, 1, 4, prefix="c")
    f, g = random_map(r, A, B), random_map(r, B, C)
    hA, hB, hC = (cohomology(X, 1) for X in (A, B, C))
    fs = induced_cochain_map(f, hB, hA)
    gs = induced_cochain_map(g, hC, hB)
    gfs = induced_cochain_map(g.compose(f), hC, hA)
    for p in range(2):
        assert gfs[p] == fs[p].compose(gs[p])


@given(st.integers(0, 10**6))
def test_one_step_homotopic_maps_agree(seed):
    r = random.Random(seed)
    G = random_digraph(r, 1, 4, prefix="g")
    H = random_digraph(r, 1, 5, prefix="h")
    f = random_map(r, G, H)
    nxt = random_step(r, f)
    if nxt is None:
        return
    hG, hH = cohomology(G, 1), cohomology(H, 1)
    a, b = induced_cochain_map(f, hH, hG), induced_cochain_map(nxt[0], hH, hG)
    assert all(x == y for x, y in zip(a, b))
