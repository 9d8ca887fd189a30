import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import rational_betti, rational_mv_dims
from digraph_brown.brown import (
    SUITES, MvInstance, check_additivity, check_cochain_lemmas, check_cone_exactness, check_four_term,
    check_mv_surjectivity, check_triviality, check_tube_surjectivity, suite,
)
from digraph_brown import constructions as cons
from digraph_brown.digraph import POINT, Digraph, DigraphMap, cycle, edgeless, line, union
from digraph_brown.figures import FIG1_GH, fig1_map, fig2_maps, s_pair
from digraph_brown.path_homology import cohomology
from digraph_brown.random_gen import random_decomposition, random_digraph

# The smallest decomposition on which H¹ fails to be Mayer-Vietoris: the
# 2-cycle a⇄b kills both triangles a→c→b, a→b→a in Ω₂ of the union, but the
# piece G2 alone is a directed 3-cycle with H¹ = ℤ.
MV_G1 = Digraph.build("ab", [("a", "b")])
MV_G2 = Digraph.build("abc", [("a", "c"), ("c", "b"), ("b", "a")])
MV_G = union(MV_G1, MV_G2)


def vE(G):
    return G.vertices, G.sorted_edges


def test_triviality():
    assert check_triviality().passed
    assert check_triviality(line("+-")).passed
    assert not check_triviality(cycle(4)).passed


def test_additivity_examples():
    assert check_additivity(cycle(4), cycle(3)).passed
    assert check_additivity(POINT, edgeless("xy")).passed


def test_mv_counterexample():
    inst = MvInstance(MV_G, MV_G1, MV_G2)
    assert cohomology(MV_G, 1)[1].rank == 0
    assert cohomology(MV_G2, 1)[1].rank == 1
    assert inst.G12 == edgeless("ab")
    rep = check_mv_surjectivity(inst)
    assert not rep.passed
    assert rep.witness["fiber_product"] == {"rank": 1, "torsion": []}
    # the rational oracle agrees: fiber product has dimension 1, image 0
    assert rational_mv_dims(vE(MV_G), vE(MV_G1), vE(MV_G2)) == (1, 0)
    # the cochain-level lemmas hold nonetheless; the gap is in Ω₂
    assert check_cochain_lemmas(inst).passed


def test_mv_four_cycle_halves():
    C = cycle(4)
    G1 = Digraph.build("012", [("0", "1"), ("1", "2")])
    G2 = Digraph.build("230", [("2", "3"), ("3", "0")])
    rep = check_mv_surjectivity(MvInstance(C, G1, G2))
    assert rep.passed
    assert rep.witness["fiber_product"]["rank"] == 0


def test_mv_rejects_non_covers():
    with pytest.raises(ValueError):
        MvInstance(cycle(4), MV_G1, MV_G1)


@given(st.integers(0, 10**6))
def test_mv_agrees_with_rational_oracle(seed):
    """Where both are torsion-free the integer verdict matches ℚ-dimensions."""
    r = random.Random(seed)
    G = random_digraph(r, 3, 5)
    G1, G2 = random_decomposition(r, G)
    inst = MvInstance(G, G1, G2)
    rep = check_mv_surjectivity(inst)
    fp_dim, im_dim = rational_mv_dims(vE(G), vE(G1), vE(G2))
    assert rep.witness["fiber_product"]["rank"] == fp_dim
    if im_dim < fp_dim:
        assert not rep.passed


@given(st.integers(0, 10**6))
def test_cochain_lemmas_hold(seed):
    r = random.Random(seed)
    G = random_digraph(r, 3, 5)
    G1, G2 = random_decomposition(r, G)
    assert check_cochain_lemmas(MvInstance(G, G1, G2)).passed


def test_cone_exactness_figure():
    f = fig1_map()
    assert check_cone_exactness(f).passed
    assert check_cone_exactness(f, gh_override=FIG1_GH).passed


def test_cone_exactness_counterexample():
    """A path wrapped around a directed 3-cycle: H¹(H) = ℤ, yet H¹(C(f)) = 0."""
    rep = next(r for r in suite("cone", seed=1, count=76) if r.witness["seed"] == 1000075)
    assert not rep.passed
    f = DigraphMap.from_json(rep.witness["map"])
    C = cons.modified_mapping_cone(f).result
    betti = [rational_betti(*vE(X), 1)[1] for X in (f.domain, f.codomain, C)]
    assert betti == [0, 1, 0]


def test_tube_figure():
    f, g = fig2_maps()
    assert check_tube_surjectivity(f, g).passed


def test_four_term_s_instance():
    G, H = s_pair()
    assert check_four_term(G, H).passed


def test_four_term_counterexample_is_at_the_union():
    rep = next(r for r in suite("four-term", seed=1, count=52) if r.witness["seed"] == 1000051)
    assert not rep.passed
    assert rep.witness["H(G⊔H) ≅ H(G)×H(H)"]


def test_suites_are_replayable():
    a = [r.to_json() for r in suite("mv", seed=7, count=5)]
    b = [r.to_json() for r in suite("mv", seed=7, count=5)]
    assert a == b
    assert {r["witness"]["seed"] for r in a} == {7 * 1_000_003 + k for k in range(5)}
    with pytest.raises(ValueError):
        list(suite("nope"))
    assert "mv" in SUITES


def test_suites_that_hold():
    for name in ("triviality", "additivity", "cochain", "tube"):
        assert all(r.passed for r in suite(name, seed=3, count=15, size=5)), name


@given(st.integers(0, 10**6))
def test_disjoint_pieces_mv_matches_additivity(seed):
    """With G1 ∩ G2 empty, MV surjectivity reduces to additivity."""
    r = random.Random(seed)
    G1 = random_digraph(r, 1, 4, prefix="g")
    G2 = random_digraph(r, 1, 4, prefix="h")
    inst = MvInstance(union(G1, G2), G1, G2)
    assert check_mv_surjectivity(inst).passed == check_additivity(G1, G2).passed
    assert check_mv_surjectivity(inst).passed

