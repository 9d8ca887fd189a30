"""The worked instances drawn in the figures, rendered as byte-stable JSON fixtures."""
from __future__ import annotations

from importlib import resources
from pathlib import Path
from typing import Callable

from . import constructions as cons
from .digraph import Digraph, I_PLUS, box_product, cycle, validate_map
from .io import dumps

# the figure draws ê_1 from c; the default rule would pick b
FIG1_GH = {"1": "c"}


def fig1_map():
    G = Digraph.build("abc", [("a", "b"), ("b", "c")])
    H = cycle(4)
    return validate_map({"a": "0", "b": "1", "c": "1"}, G, H)


def fig2_maps():
    f = fig1_map()
    g = validate_map({"a": "1", "b": "2", "c": "2"}, f.domain, f.codomain)
    return f, g


def s_pair():
    G = Digraph.build("abc", [("a", "b"), ("b", "c")])
    H = Digraph.build("bcd", [("b", "c"), ("c", "d")])
    return G, H


def triangle():
    return Digraph.build("abc", [("a", "b"), ("b", "c"), ("c", "a")])


def _mhat():
    return cons.modified_mapping_cylinder(fig1_map()).to_json()


def _chat():
    return cons.modified_cone(fig1_map(), FIG1_GH).to_json()


def _cf():
    return cons.modified_mapping_cone(fig1_map(), FIG1_GH).to_json()


def _overlap():
    return {"digraph": cons.cone_cylinder_overlap(fig1_map(), FIG1_GH).to_json()}


def _mf():
    return cons.mapping_cylinder(fig2_maps()[0]).to_json()


def _tube():
    return cons.mapping_tube(*fig2_maps()).to_json()


def _s():
    return cons.s_digraph(*s_pair()).to_json()


def _prism():
    return {"digraph": box_product(triangle(), I_PLUS.digraph()).to_json()}


FIGURES: dict[str, Callable[[], dict]] = {
    "fig1_modified_cylinder": _mhat,
    "fig1_modified_cone": _chat,
    "fig1_mapping_cone": _cf,
    "fig1_overlap": _overlap,
    "fig2_mapping_cylinder": _mf,
    "fig2_mapping_tube": _tube,
    "s_digraph": _s,
    "triangle_prism": _prism,
}


def render(name: str) -> str:
    return dumps(FIGURES[name](), indent=2) + "\n"


def fixture_dir() -> Path:
    return Path(str(resources.files(__package__) / "fixtures"))


def write_all(directory: Path) -> list[Path]:
    directory.mkdir(parents=True, exist_ok=True)
    out = []
    for name in FIGURES:
        p = directory / f"{name}.json"
        p.write_text(render(name))
        out.append(p)
    return out


def diff_all(directory: Path | None = None) -> dict[str, str]:
    """Regenerate every figure and compare it byte-for-byte with the stored fixture."""
    directory = directory or fixture_dir()
    status = {}
    for name in FIGURES:
        p = directory / f"{name}.json"
        if not p.exists():
            status[name] = "missing"
        else:
            status[name] = "identical" if p.read_text() == render(name) else "differs"
    return status
