"""Small named spaces and maps used by the test suite and the CLI examples."""
from __future__ import annotations

import os
from functools import lru_cache

from . import serialize
from .functor import Filtration, induced_hom
from .homotopy import constant_homotopy
from .presentation import present
from .sset import (FiniteSimplicialSet, SimplicialMap, constant_map, copairing, disjoint_union,
                   identity_map, minimal_circle, simplex_inclusion, standard_simplex, summand_inclusion)
from .subdivision import subdivide


@lru_cache(maxsize=None)
def spaces() -> dict[str, FiniteSimplicialSet]:
    circle = minimal_circle()
    return {
        "Delta0": standard_simplex(0),
        "Delta1": standard_simplex(1),
        "Delta2": standard_simplex(2),
        "Delta0+Delta0": disjoint_union(standard_simplex(0), standard_simplex(0)),
        "S1": circle,
        "Sd(S1)": subdivide(circle).sd,
    }


def _edge_swap(X: FiniteSimplicialSet) -> SimplicialMap:
    """Automorphism of ``Sd(S1)`` exchanging its two edges."""
    e1, e2 = X.nondegenerate(1)
    images = {s: X.simplex(s) for s in X}
    images[e1], images[e2] = X.simplex(e2), X.simplex(e1)
    return SimplicialMap(X, X, images, name="swap_edges")


@lru_cache(maxsize=None)
def maps() -> dict[str, SimplicialMap]:
    """Maps whose induced generator maps respect every relation."""
    S = spaces()
    point, pair = S["Delta0"], S["Delta0+Delta0"]
    out: dict[str, SimplicialMap] = {}
    for name, X in S.items():
        out[f"id_{name}"] = identity_map(X)
    in0, in1 = summand_inclusion(pair, 0), summand_inclusion(pair, 1)
    out["fold"] = copairing(pair, [identity_map(point), identity_map(point)])
    out["fold"].name = "fold"
    out["swap"] = copairing(pair, [in1, in0])
    out["swap"].name = "swap"
    out["in0"], out["in1"] = in0, in1
    for name in ("Delta1", "Delta2", "S1", "Sd(S1)"):
        X = S[name]
        out[f"collapse_{name}"] = constant_map(X, point, "0")
        out[f"collapse_{name}"].name = f"collapse_{name}"
    out["swap_edges"] = _edge_swap(S["Sd(S1)"])
    return out


@lru_cache(maxsize=None)
def face_inclusions() -> dict[str, SimplicialMap]:
    """Inclusions of faces into standard simplices, sharing the corpus spaces."""
    S = spaces()
    out = {}
    for v in (0, 1):
        f = simplex_inclusion(0, [v], 1)
        out[f"vertex{v}_Delta1"] = SimplicialMap(S["Delta0"], S["Delta1"], f.images, name=f"d{1 - v}")
    for verts in ((0, 1), (0, 2), (1, 2)):
        f = simplex_inclusion(1, list(verts), 2)
        out[f"edge{verts[0]}{verts[1]}_Delta2"] = SimplicialMap(S["Delta1"], S["Delta2"], f.images,
                                                             name=f"edge{verts[0]}{verts[1]}")
    return out


def all_maps() -> dict[str, SimplicialMap]:
    return {**maps(), **face_inclusions()}


def composable_pairs(catalog: dict[str, SimplicialMap] | None = None):
    """Pairs ``(f, g)`` of catalog maps with ``g . f`` defined."""
    catalog = catalog if catalog is not None else all_maps()
    for fn, f in catalog.items():
        for gn, g in catalog.items():
            if f.target is g.source:
                yield (fn, f), (gn, g)


def points_to_point(stages: int) -> Filtration:
    """Window ``N = 1..stages`` onto the map from countably many points to a point."""
    point = standard_simplex(0)
    X = [disjoint_union(*[standard_simplex(0)] * n, tags=[f"p{k}" for k in range(n)])
         for n in range(1, stages + 1)]
    inclusions = []
    for k in range(stages - 1):
        src, tgt = X[k], X[k + 1]
        inclusions.append(SimplicialMap(src, tgt, {s: tgt.simplex(s) for s in src}, name=f"i{k + 1}"))
    maps_ = tuple(constant_map(Xk, point, "0") for Xk in X)
    return Filtration(tuple(X), tuple(inclusions), maps_, name="points_to_point")


def fixtures() -> dict[str, object]:
    """File name to object, for the JSON fixtures shipped under ``data/``."""
    S, M = spaces(), maps()
    d = constant_homotopy(M["id_Delta1"])
    return {
        "delta0.sset.json": S["Delta0"],
        "delta1.sset.json": S["Delta1"],
        "delta2.sset.json": S["Delta2"],
        "circle.sset.json": S["S1"],
        "delta1.presentation.json": present(S["Delta1"]),
        "circle.presentation.json": present(S["S1"]),
        "fold.smap.json": M["fold"],
        "collapse_delta1.smap.json": M["collapse_Delta1"],
        "vertex0_delta1.smap.json": face_inclusions()["vertex0_Delta1"],
        "fold.genmap.json": induced_hom(M["fold"]),
        "vertex0_delta1.genmap.json": induced_hom(face_inclusions()["vertex0_Delta1"]),
        "id_delta1.smap.json": d.f1,
        "id_delta1_pr2.smap.json": d.gamma,
        "infinite_points_to_point.filtration.json": points_to_point(5),
    }


def write_fixtures(directory) -> list[str]:
    os.makedirs(directory, exist_ok=True)
    written = []
    for name, obj in fixtures().items():
        path = os.path.join(directory, name)
        serialize.write(obj, path)
        written.append(path)
    return written
