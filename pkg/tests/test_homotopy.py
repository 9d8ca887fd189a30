import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from digraph_brown import constructions as cons
from digraph_brown.digraph import (
    EMPTY, I_PLUS, POINT, Digraph, DigraphMap, DomainMismatch, constant, cycle, edgeless, identity, validate_map,
)
from digraph_brown.figures import fig1_map, fig2_maps, s_pair, triangle
from digraph_brown.homotopy import (
    EmptyDigraph, Homotopy, InvalidRestriction, Status, decide_homotopic, hep_extension_search,
    homotopy_classes, homotopy_equivalent, is_contractible, one_step, verify_homotopy,
    verify_homotopy_assembled,
)
from digraph_brown.random_gen import random_digraph, random_map, random_step


def rotation(G, shift=1):
    vs = G.vertices
    return validate_map({v: vs[(i + shift) % len(vs)] for i, v in enumerate(vs)}, G, G)


def test_one_step_examples():
    T = triangle()
    assert one_step(identity(T), rotation(T), "+")
    assert not one_step(identity(T), rotation(T), "-")
    f = identity(T)
    assert one_step(f, f, "+") and one_step(f, f, "-")
    E = edgeless("xy")
    a = validate_map({"*": "x"}, POINT, E)
    b = validate_map({"*": "y"}, POINT, E)
    assert not one_step(a, b, "+") and not one_step(a, b, "-")
    with pytest.raises(DomainMismatch):
        one_step(a, identity(T), "+")


def test_verify_homotopy_examples():
    f = fig1_map()
    res = cons.modified_mapping_cone(f)
    word, frames = cons.cofiber_homotopy_frames(f, res)
    assert verify_homotopy(Homotopy.from_frames(word, frames))
    assert verify_homotopy(Homotopy.from_frames("+", [f, f]))
    ab = Digraph.build("ab", [("a", "b")])
    flip = DigraphMap(ab, ab, {"a": "b", "b": "a"})
    assert not verify_homotopy(Homotopy(ab, ab, I_PLUS, (identity(ab), flip)))


def test_decide_homotopic_examples():
    f, g = fig2_maps()
    res = cons.mapping_tube(f, g)
    i = res["embed_H"]
    v = decide_homotopic(i.compose(f), i.compose(g))
    assert v.status is Status.HOMOTOPIC and verify_homotopy(v.certificate)
    same = decide_homotopic(f, f)
    assert same.homotopic and same.certificate.line.word == ""
    C4 = cycle(4)
    assert decide_homotopic(identity(C4), constant(C4, C4, "0")).status is Status.NOT_HOMOTOPIC


def test_tube_frames_verify():
    f, g = fig2_maps()
    res = cons.mapping_tube(f, g)
    word, frames = cons.tube_homotopy_frames(f, g, res)
    h = Homotopy.from_frames(word, frames)
    assert word == "-++" and verify_homotopy(h)


def test_contractibility():
    res = cons.modified_cone(fig1_map())
    v = is_contractible(res.result)
    assert v.homotopic and verify_homotopy(v.certificate)
    frames = [validate_map(fr, res.result, res.result) for fr in cons.cone_contraction_frames(res)]
    assert verify_homotopy(Homotopy.from_frames("--", frames))
    assert is_contractible(POINT).homotopic
    assert is_contractible(cycle(4)).status is Status.NOT_HOMOTOPIC
    with pytest.raises(EmptyDigraph):
        is_contractible(EMPTY)


def test_budget_exceeded_is_inconclusive():
    C4 = cycle(4)
    v = decide_homotopic(identity(C4), constant(C4, C4, "0"), budget=3)
    assert v.status is Status.BUDGET_EXCEEDED


def test_equivalence_examples():
    f = fig1_map()
    res = cons.modified_mapping_cylinder(f)
    crush = res["retraction"], res["embed_H"]
    v = homotopy_equivalent(res.result, f.codomain, candidates=[crush])
    assert v.equivalent
    T = triangle()
    assert homotopy_equivalent(T, T, candidates=[(identity(T), identity(T))]).equivalent
    assert homotopy_equivalent(POINT, Digraph.build("ab", [("a", "b")])).equivalent
    assert homotopy_equivalent(POINT, cycle(4)).status is Status.NOT_HOMOTOPIC


def test_s_digraph_equivalence_via_j_r():
    G, H = s_pair()
    res = cons.s_digraph(G, H)
    word, frames = cons.s_digraph_homotopy_frames(G, H, res)
    h = Homotopy.from_frames(word, frames)
    assert verify_homotopy(h)
    assert h.end == res["inclusion"].compose(res["retraction"])
    assert res["retraction"].compose(res["inclusion"]) == identity(res.result)
    j, r = res["inclusion"], res["retraction"]
    v = homotopy_equivalent(res.result, j.codomain, candidates=[(j, r)])
    assert v.equivalent and all(verify_homotopy(c) for c in v.certificates)


def test_hep_remark_instance():
    G = triangle()
    X = Digraph.build("ab", [("a", "b")])
    f = identity(G)
    F = Homotopy.from_frames("+", [validate_map({"a": "a", "b": "b"}, X, G),
                                   validate_map({"a": "b", "b": "b"}, X, G)])
    trace = []
    assert hep_extension_search(G, X, f, F, trace) is None
    assert sorted((r.level, r.vertex, r.value) for r in trace) == [(1, "c", "a"), (1, "c", "b"), (1, "c", "c")]
    # positive controls
    FG = Homotopy.from_frames("+", [f, rotation(G)])
    ext = hep_extension_search(G, G, f, FG)
    assert ext is not None and ext.frames == FG.frames
    still = Homotopy.from_frames("+-", [validate_map({"a": "a", "b": "b"}, X, G)] * 3)
    ext = hep_extension_search(G, X, f, still)
    assert ext is not None and verify_homotopy(ext) and ext.start == f


def test_hep_preconditions():
    G = triangle()
    X = Digraph.build("ab", [("a", "b")])
    F = Homotopy.from_frames("+", [validate_map({"a": "b", "b": "c"}, X, G)] * 2)
    with pytest.raises(InvalidRestriction):
        hep_extension_search(G, X, identity(G), F)


def test_components_of_point_maps_into_edgeless():
    # [∗, m isolated points] has m classes
    assert len(homotopy_classes(POINT, edgeless("xyz"))) == 3


@given(st.integers(0, 10**6), st.integers(1, 4))
def test_certificates_and_assembled_agree(seed, walk):
    r = random.Random(seed)
    G = random_digraph(r, 1, 4, prefix="g")
    H = random_digraph(r, 1, 4, prefix="h")
    f = random_map(r, G, H)
    frames, word = [f], ""
    for _ in range(walk):
        nxt = random_step(r, frames[-1])
        if nxt is None:
            break
        frames.append(nxt[0])
        word += nxt[1]
    h = Homotopy.from_frames(word, frames)
    assert verify_homotopy(h) and verify_homotopy_assembled(h)
    v = decide_homotopic(frames[0], frames[-1])
    assert v.homotopic and verify_homotopy(v.certificate)
    assert v.certificate.start == frames[0] and v.certificate.end == frames[-1]
    back = h.reversed()
    assert verify_homotopy(back) and back.start == h.end
    assert verify_homotopy(h.then(back))


@given(st.integers(0, 10**6))
def test_random_frames_verify_iff_assembled(seed):
    r = random.Random(seed)
    G = random_digraph(r, 1, 3, prefix="g")
    H = random_digraph(r, 1, 3, prefix="h")
    f, g = random_map(r, G, H), random_map(r, G, H)
    word = r.choice("+-")
    h = Homotopy.from_frames(word, [f, g])
    assert verify_homotopy(h) == verify_homotopy_assembled(h)
