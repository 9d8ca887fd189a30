"""Cones, cylinders, modified mapping cones, mapping tubes and the S-digraph.

Label scheme (stable, used by all fixtures):

* codomain vertex ``h``            -> ``"H:h"``
* domain vertex ``g`` at level k   -> ``"(g,k)"``
* cone apex                        -> ``"*"``

In the modified mapping cone the cone's base slice ``(g,0)`` is identified
with the cylinder's free slice ``(g,1)``; the merged vertex keeps the
cylinder name ``"(g,1)"``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .digraph import (
    Digraph, DigraphError, DigraphMap, DomainMismatch, I_MINUS, LineDigraph,
    box_product, collapse, disjoint_union, image_2, induced_subdigraph,
    intersection, pair_label, union, validate_map,
)

APEX = "*"


def hlabel(h: str) -> str:
    return f"H:{h}"


def glabel(g: str, level: int) -> str:
    return pair_label(g, str(level))


@dataclass(frozen=True)
class ConstructionResult:
    result: Digraph
    canonical_maps: dict[str, DigraphMap] = field(default_factory=dict)
    # choice of preimage for each h in V1' ∪ V1'' (modified cone / mapping cone)
    gh_choice: dict[str, str] = field(default_factory=dict)

    def __getitem__(self, name: str) -> DigraphMap:
        return self.canonical_maps[name]

    def to_json(self) -> dict:
        doc = {"digraph": self.result.to_json(),
               "canonical_maps": {k: m.to_json() for k, m in sorted(self.canonical_maps.items())}}
        if self.gh_choice:
            doc["g_h choice"] = dict(sorted(self.gh_choice.items()))
        return doc


def _checked(G: Digraph, H: Digraph, a: Mapping[str, str]) -> DigraphMap:
    return validate_map(a, G, H)


def _level_copy(G: Digraph, word: str) -> Digraph:
    return box_product(G, LineDigraph(word).digraph())


# -- cone and cylinders -------------------------------------------------------

def cone(G: Digraph) -> ConstructionResult:
    """(G □ I⁻ ⊔ *) / ((g,1) ~ *): the level-1 copy collapses to the apex."""
    P = _level_copy(G, "-")
    P = Digraph(P.vertices + (APEX,), P.edges)
    C, proj = collapse(P, {glabel(g, 1): APEX for g in G.vertices})
    embed = _checked(G, C, {g: glabel(g, 0) for g in G.vertices})
    apex = _checked(Digraph((APEX,), frozenset()), C, {APEX: APEX})
    return ConstructionResult(C, {"embed_G": embed, "apex": apex})


def _cylinder_parts(f: DigraphMap) -> tuple[Digraph, dict[str, str]]:
    G, H = f.domain, f.codomain
    P = _level_copy(G, "-")
    Hl = Digraph(tuple(hlabel(h) for h in H.vertices),
                 frozenset((hlabel(u), hlabel(v)) for u, v in H.edges))
    both = union(P, Hl)
    return both, {glabel(g, 0): hlabel(f(g)) for g in G.vertices}


def mapping_cylinder(f: DigraphMap) -> ConstructionResult:
    """(G □ I⁻ ⊔ H) / ((g,0) ~ f(g)); the free copy of G sits at level 1."""
    both, rename = _cylinder_parts(f)
    M, _ = collapse(both, rename)
    return ConstructionResult(M, _cylinder_maps(f, M))


def _cylinder_maps(f: DigraphMap, M: Digraph) -> dict[str, DigraphMap]:
    G, H = f.domain, f.codomain
    return {
        "embed_H": _checked(H, M, {h: hlabel(h) for h in H.vertices}),
        "embed_G": _checked(G, M, {g: glabel(g, 1) for g in G.vertices}),
        "retraction": _checked(M, H, {**{hlabel(h): h for h in H.vertices},
                                      **{glabel(g, 1): f(g) for g in G.vertices}}),
    }


def bridging_edges(f: DigraphMap) -> tuple[set, set]:
    """The extra edges of the modified cylinder, into and out of image₂."""
    im2 = image_2(f)
    im_edges = f.image_edges()
    into, out_of = set(), set()
    for g in f.domain.vertices:
        fg = f(g)
        if fg in im2:
            continue
        for a, b in im_edges:
            if a == fg and b in im2:
                into.add((glabel(g, 1), hlabel(b)))
            if b == fg and a in im2:
                out_of.add((hlabel(a), glabel(g, 1)))
    return into, out_of


def modified_mapping_cylinder(f: DigraphMap) -> ConstructionResult:
    M = mapping_cylinder(f).result
    into, out_of = bridging_edges(f)
    Mh = Digraph(M.vertices, M.edges | into | out_of)
    return ConstructionResult(Mh, _cylinder_maps(f, Mh))


# -- modified cone ----------------------------------------------------------

def attaching_vertices(f: DigraphMap) -> tuple[set[str], set[str]]:
    """(V₁′, V₁″): image₂ vertices entered from / leaving to the rest of the image."""
    im2 = image_2(f)
    im_edges = f.image_edges()
    v1p = {b for a, b in im_edges if b in im2 and a not in im2}
    v1pp = {a for a, b in im_edges if a in im2 and b not in im2}
    return v1p, v1pp


def choose_gh(f: DigraphMap, targets, override: Mapping[str, str] | None = None) -> dict[str, str]:
    """Minimal preimage of each target, unless overridden."""
    override = dict(override or {})
    choice = {}
    for h in sorted(targets):
        if h in override:
            g = override[h]
            if g not in f.domain or f(g) != h:
                raise DigraphError(f"override {g!r} is not a preimage of {h!r}")
        else:
            g = min(v for v in f.domain.vertices if f(v) == h)
        choice[h] = g
    return choice


def modified_cone(f: DigraphMap, gh_override: Mapping[str, str] | None = None) -> ConstructionResult:
    G = f.domain
    base = cone(G).result
    v1p, v1pp = attaching_vertices(f)
    attach = v1p | v1pp
    gh = choose_gh(f, attach, gh_override)
    es = set(base.edges)
    es |= {(glabel(g, 0), APEX) for g in G.vertices}
    es |= {(APEX, hlabel(h)) for h in v1p}
    es |= {(hlabel(h), APEX) for h in v1pp}
    # section edges ê_h, indexed over V1' ∪ V1''
    es |= {(glabel(gh[h], 0), hlabel(h)) for h in attach}
    C = Digraph(base.vertices + tuple(hlabel(h) for h in sorted(attach)), frozenset(es))
    maps = {
        "embed_G": _checked(G, C, {g: glabel(g, 0) for g in G.vertices}),
        "apex": _checked(Digraph((APEX,), frozenset()), C, {APEX: APEX}),
    }
    return ConstructionResult(C, maps, gh)


def cone_contraction_frames(res: ConstructionResult) -> list[dict[str, str]]:
    """Middle frame of the 2-step contraction of a modified cone over 0←1←2.

    Attaching vertices slide onto their chosen preimage; everything else stays.
    """
    C = res.result
    mid = {v: v for v in C.vertices}
    for h, g in res.gh_choice.items():
        mid[hlabel(h)] = glabel(g, 0)
    return [{v: v for v in C.vertices}, mid, {v: APEX for v in C.vertices}]


# -- modified mapping cone --------------------------------------------------

def modified_mapping_cone(f: DigraphMap, gh_override: Mapping[str, str] | None = None) -> ConstructionResult:
    G, H = f.domain, f.codomain
    cone_res = modified_cone(f, gh_override)
    Ch = cone_res.result
    Mh = modified_mapping_cylinder(f).result
    # cone base (g,0) merges with the cylinder slice (g,1); H labels already agree
    to_total = {v: v for v in Ch.vertices}
    to_total.update({glabel(g, 0): glabel(g, 1) for g in G.vertices})
    Ch_in = Digraph(tuple(to_total[v] for v in Ch.vertices),
                    frozenset((to_total[u], to_total[v]) for u, v in Ch.edges))
    C = union(Ch_in, Mh)
    maps = {
        "embed_H": _checked(H, C, {h: hlabel(h) for h in H.vertices}),
        "embed_G": _checked(G, C, {g: glabel(g, 1) for g in G.vertices}),
        "apex": _checked(Digraph((APEX,), frozenset()), C, {APEX: APEX}),
        "embed_cone": _checked(Ch, C, to_total),
        "embed_cylinder": _checked(Mh, C, {v: v for v in Mh.vertices}),
        "f_tilde": _checked(G, C, {g: hlabel(f(g)) for g in G.vertices}),
    }
    return ConstructionResult(C, maps, cone_res.gh_choice)


def cone_cylinder_overlap(f: DigraphMap, gh_override=None) -> Digraph:
    """M̂_f ∩ Ĉ_fG as subdigraphs of C(f)."""
    res = modified_mapping_cone(f, gh_override)
    a = res["embed_cone"]
    b = res["embed_cylinder"]
    return intersection(_image_digraph(a), _image_digraph(b))


def _image_digraph(m: DigraphMap) -> Digraph:
    a = m.assignment
    return Digraph(tuple(set(a.values())), frozenset((a[u], a[v]) for u, v in m.domain.edges))


def cofiber_homotopy_frames(f: DigraphMap, res: ConstructionResult) -> tuple[str, list[DigraphMap]]:
    """Frames f̃ → middle slice → apex over 0←1←2 into C(f)."""
    G = f.domain
    C = res.result
    frames = [res["f_tilde"], res["embed_G"],
              DigraphMap(G, C, {g: APEX for g in G.vertices})]
    return "--", frames


# -- mapping tube ------------------------------------------------------------

TUBE_WORD = "-++"   # 0 <- 1 -> 2 -> 3


def _check_parallel(f: DigraphMap, g: DigraphMap):
    if f.domain != g.domain or f.codomain != g.codomain:
        raise DomainMismatch("maps must share domain and codomain")


def mapping_tube(f: DigraphMap, g: DigraphMap) -> ConstructionResult:
    """((G □ I₃) ⊔ H) / ((x,0) ~ f(x), (x,3) ~ g(x))."""
    _check_parallel(f, g)
    G, H = f.domain, f.codomain
    P = _level_copy(G, TUBE_WORD)
    Hl = Digraph(tuple(hlabel(h) for h in H.vertices),
                 frozenset((hlabel(u), hlabel(v)) for u, v in H.edges))
    rename = {glabel(x, 0): hlabel(f(x)) for x in G.vertices}
    rename.update({glabel(x, 3): hlabel(g(x)) for x in G.vertices})
    T, _ = collapse(union(P, Hl), rename)
    maps = {
        "embed_H": _checked(H, T, {h: hlabel(h) for h in H.vertices}),
        "j": _checked(G, T, {x: glabel(x, 1) for x in G.vertices}),
        "j_prime": _checked(G, T, {x: glabel(x, 2) for x in G.vertices}),
    }
    return ConstructionResult(T, maps)


def tube_homotopy_frames(f: DigraphMap, g: DigraphMap, res: ConstructionResult) -> tuple[str, list[DigraphMap]]:
    """The tube itself read as a homotopy i∘f ≃ i∘g over I₃."""
    i = res["embed_H"]
    return TUBE_WORD, [i.compose(f), res["j"], res["j_prime"], i.compose(g)]


def tube_decomposition(f: DigraphMap, g: DigraphMap) -> tuple[Digraph, Digraph, Digraph]:
    """Split the tube into the cylinder of f⊔g and the middle G □ I⁺.

    Returns (cylinder part, middle part, their intersection), all in tube labels.
    """
    _check_parallel(f, g)
    G = f.domain
    T = mapping_tube(f, g).result
    lvl1 = {glabel(x, 1) for x in G.vertices}
    lvl2 = {glabel(x, 2) for x in G.vertices}
    middle = induced_subdigraph(T, lvl1 | lvl2)
    # the cylinder part carries every tube edge except the 1 -> 2 rungs,
    # and no edges between level 1 and level 2 (the intersection is G ⊔ G)
    rungs = {(glabel(x, 1), glabel(x, 2)) for x in G.vertices}
    cyl = Digraph(T.vertices, T.edges - rungs)
    return cyl, middle, intersection(cyl, middle)


def coproduct_map(f: DigraphMap, g: DigraphMap) -> DigraphMap:
    """f ⊔ g : G ⊔ G → H."""
    _check_parallel(f, g)
    D, _, _ = disjoint_union(f.domain, g.domain)
    a = {f"L:{x}": f(x) for x in f.domain.vertices}
    a.update({f"R:{x}": g(x) for x in g.domain.vertices})
    return validate_map(a, D, f.codomain)


# -- S-digraph -----------------------------------------------------------------

def fold_map(G: Digraph, H: Digraph) -> DigraphMap:
    """The canonical map G ⊔ H → G ∪ H."""
    D, _, _ = disjoint_union(G, H)
    a = {f"L:{x}": x for x in G.vertices}
    a.update({f"R:{x}": x for x in H.vertices})
    return validate_map(a, D, union(G, H))


def s_digraph(G: Digraph, H: Digraph, gh_override=None) -> ConstructionResult:
    """The part of C(G ⊔ H → G ∪ H) lying over G ∩ H, with inclusion and retraction."""
    f = fold_map(G, H)
    cres = modified_mapping_cone(f, gh_override)
    C = cres.result
    common = sorted(G.vertex_set & H.vertex_set)
    keep = {hlabel(x) for x in common}
    keep |= {glabel(f"L:{x}", 1) for x in common} | {glabel(f"R:{x}", 1) for x in common}
    keep.add(APEX)
    S = induced_subdigraph(C, keep)
    j = _checked(S, C, {v: v for v in S.vertices})
    r = _checked(C, S, {v: (v if v in keep else APEX) for v in C.vertices})
    maps = {"inclusion": j, "retraction": r, "fold": f, "cone_embed_H": cres["embed_H"]}
    return ConstructionResult(S, maps, cres.gh_choice)


def s_digraph_homotopy_frames(G: Digraph, H: Digraph, res: ConstructionResult) -> tuple[str, list[DigraphMap]]:
    """id_{C(f)} ≃ j∘r over 0←1←2: vertices over G∪H∖G∩H first lift to the middle slice."""
    j, r = res["inclusion"], res["retraction"]
    C = j.codomain
    common = G.vertex_set & H.vertex_set
    mid = {v: v for v in C.vertices}
    for x in (G.vertex_set | H.vertex_set) - common:
        side = "L" if x in G else "R"
        mid[hlabel(x)] = glabel(f"{side}:{x}", 1)
    ident = DigraphMap(C, C, {v: v for v in C.vertices})
    return "--", [ident, DigraphMap(C, C, mid), j.compose(r)]


def crushing_frames(f: DigraphMap, res: ConstructionResult) -> tuple[str, list[DigraphMap]]:
    """id ≃ (embed_H ∘ retraction) on M̂_f over I⁺: the free slice drops onto H."""
    M = res.result
    ident = DigraphMap(M, M, {v: v for v in M.vertices})
    return "+", [ident, res["embed_H"].compose(res["retraction"])]
