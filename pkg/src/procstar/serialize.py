"""Versioned JSON documents for every artifact, with schema validation.

``dumps`` is the canonical byte form: re-serializing a loaded document
gives identical bytes.
"""
from __future__ import annotations

import json
from typing import Any

import jsonschema

from . import presentation as _pres
from . import repcheck as _rep
from .functor import Filtration, GeneratorMap
from .polynomial import StarPolynomial
from .poset import Arrow, DoubledQuiver
from .sset import FiniteSimplicialSet, Simplex, SimplicialMap


class DocumentError(ValueError):
    pass


_SIMPLEX = {
    "type": "object",
    "required": ["base", "deg"],
    "properties": {"base": {"type": "string"},
                   "deg": {"type": "array", "items": {"type": "integer", "minimum": 0}}},
    "additionalProperties": False,
}
_POLY = {"type": "array", "items": {
    "type": "array", "minItems": 2, "maxItems": 2,
    "prefixItems": [{"type": "integer"}, {"type": "array", "items": {"type": "string"}}]}}

SSET = {
    "type": "object",
    "required": ["schema", "simplices", "faces"],
    "properties": {
        "schema": {"const": "sset.v1"},
        "name": {"type": "string"},
        "simplices": {"type": "array", "items": {
            "type": "object", "required": ["id", "dim"],
            "properties": {"id": {"type": "string"}, "dim": {"type": "integer", "minimum": 0}},
            "additionalProperties": False}},
        "faces": {"type": "object", "additionalProperties": {"type": "array", "items": _SIMPLEX}},
    },
}
_IMAGES = {"type": "object", "additionalProperties": _SIMPLEX}
SMAP = {
    "type": "object",
    "required": ["schema", "source", "target", "images"],
    "properties": {"schema": {"const": "smap.v1"}, "name": {"type": "string"},
                   "source": SSET, "target": SSET, "images": _IMAGES},
}
FILTRATION = {
    "type": "object",
    "required": ["schema", "target", "stages", "inclusions", "maps"],
    "properties": {
        "schema": {"const": "filtration.v1"}, "name": {"type": "string"},
        "target": SSET,
        "stages": {"type": "array", "minItems": 1, "items": SSET},
        "inclusions": {"type": "array", "items": _IMAGES},
        "maps": {"type": "array", "items": _IMAGES},
    },
}
QUIVER = {
    "type": "object",
    "required": ["schema", "vertices", "edges"],
    "properties": {
        "schema": {"const": "quiver.v1"},
        "hasse": {"type": "boolean"},
        "vertices": {"type": "array", "items": {"type": "string"}},
        "edges": {"type": "array", "items": {
            "type": "object", "required": ["name", "s", "t", "star"],
            "properties": {k: {"type": "string"} for k in ("name", "s", "t", "star")}}},
    },
}
PRESENTATION = {
    "type": "object",
    "required": ["schema", "vertices", "edges", "relations", "unital"],
    "properties": {
        "schema": {"const": "presentation.v1"},
        "name": {"type": "string"},
        "unital": {"type": "boolean"},
        "lambda_note": {"type": "string"},
        "vertices": {"type": "array", "items": {
            "type": "object", "required": ["name", "element"],
            "properties": {"name": {"type": "string"}, "element": {"type": "string"},
                           "positive": {"const": True}, "self_adjoint": {"const": True}}}},
        "edges": {"type": "array", "items": {
            "type": "object", "required": ["name", "s", "t", "star"],
            "properties": {k: {"type": "string"} for k in ("name", "s", "t", "star")}}},
        "relations": {"type": "array", "items": {
            "type": "object", "required": ["schema", "lhs", "rhs"],
            "properties": {"schema": {"enum": [s.value for s in _pres.Schema]},
                           "lhs": _POLY, "rhs": _POLY}}},
    },
}
GENMAP = {
    "type": "object",
    "required": ["schema", "source_presentation", "target_presentation", "images"],
    "properties": {
        "schema": {"const": "genmap.v1"}, "name": {"type": "string"},
        "source_presentation": PRESENTATION, "target_presentation": PRESENTATION,
        "images": {"type": "object", "additionalProperties": _POLY},
    },
}
REP = {
    "type": "object",
    "required": ["schema", "dim", "images"],
    "properties": {
        "schema": {"const": "rep.v1"},
        "dim": {"type": "integer", "minimum": 1},
        "images": {"type": "object", "additionalProperties": {
            "type": "array", "items": {"type": "array", "items": {
                "type": "array", "minItems": 2, "maxItems": 2, "items": {"type": "number"}}}}},
    },
}

SCHEMAS = {"sset.v1": SSET, "smap.v1": SMAP, "filtration.v1": FILTRATION, "quiver.v1": QUIVER,
           "presentation.v1": PRESENTATION, "genmap.v1": GENMAP, "rep.v1": REP}


def validate_document(doc: Any, schema: str | None = None) -> str:
    """Check ``doc`` against its declared (or the given) schema; return the schema name."""
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    name = schema or doc.get("schema")
    if name not in SCHEMAS:
        raise DocumentError(f"unknown schema {name!r}")
    try:
        jsonschema.validate(doc, SCHEMAS[name])
    except jsonschema.ValidationError as e:
        raise DocumentError(f"{name}: {e.message}") from None
    return name


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=1) + "\n"


# --- simplicial sets and maps -----------------------------------------------

def _simplex_doc(s: Simplex) -> dict:
    return {"base": s.base, "deg": list(s.deg)}


def sset_to_json(X: FiniteSimplicialSet) -> dict:
    return {
        "schema": "sset.v1",
        "name": X.name,
        "simplices": [{"id": s, "dim": n} for s, n in X.dims.items()],
        "faces": {s: [_simplex_doc(f) for f in fs] for s, fs in X.faces.items()},
    }


def sset_from_json(doc: dict) -> FiniteSimplicialSet:
    validate_document(doc, "sset.v1")
    dims = {s["id"]: s["dim"] for s in doc["simplices"]}
    if len(dims) != len(doc["simplices"]):
        raise DocumentError("duplicate simplex ids")
    faces = {}
    for sid, fs in doc["faces"].items():
        if sid not in dims:
            raise DocumentError(f"faces given for unknown simplex {sid!r}")
        faces[sid] = tuple(_simplex(dims, f) for f in fs)
    return FiniteSimplicialSet(dims, faces, name=doc.get("name", ""))


def _simplex(dims: dict, d: dict) -> Simplex:
    if d["base"] not in dims:
        raise DocumentError(f"unknown simplex {d['base']!r}")
    deg = tuple(d["deg"])
    if any(b >= a for a, b in zip(deg, deg[1:])):
        raise DocumentError(f"degeneracy word {list(deg)} is not strictly decreasing")
    return Simplex(d["base"], deg, dims[d["base"]] + len(deg))


def _images_from_json(source: FiniteSimplicialSet, target: FiniteSimplicialSet, table: dict):
    extra = set(table) - set(source.dims)
    if extra:
        raise DocumentError(f"images given for unknown simplices {sorted(extra)[:3]}")
    return {s: _simplex(target.dims, d) for s, d in table.items()}


def smap_to_json(f: SimplicialMap) -> dict:
    return {
        "schema": "smap.v1",
        "name": f.name,
        "source": sset_to_json(f.source),
        "target": sset_to_json(f.target),
        "images": {s: _simplex_doc(img) for s, img in f.images.items()},
    }


def smap_from_json(doc: dict) -> SimplicialMap:
    validate_document(doc, "smap.v1")
    X = sset_from_json(doc["source"])
    Y = X if doc["target"] == doc["source"] else sset_from_json(doc["target"])
    return SimplicialMap(X, Y, _images_from_json(X, Y, doc["images"]), name=doc.get("name", ""))


def filtration_to_json(F: Filtration) -> dict:
    return {
        "schema": "filtration.v1",
        "name": F.name,
        "target": sset_to_json(F.target),
        "stages": [sset_to_json(X) for X in F.stages],
        "inclusions": [{s: _simplex_doc(i) for s, i in inc.images.items()} for inc in F.inclusions],
        "maps": [{s: _simplex_doc(i) for s, i in f.images.items()} for f in F.maps],
    }


def filtration_from_json(doc: dict) -> Filtration:
    validate_document(doc, "filtration.v1")
    Y = sset_from_json(doc["target"])
    stages = tuple(sset_from_json(d) for d in doc["stages"])
    if len(doc["inclusions"]) != len(stages) - 1 or len(doc["maps"]) != len(stages):
        raise DocumentError("need one map per stage and one inclusion between consecutive stages")
    incs = tuple(SimplicialMap(stages[k], stages[k + 1],
                               _images_from_json(stages[k], stages[k + 1], t), name=f"i{k + 1}")
                 for k, t in enumerate(doc["inclusions"]))
    maps = tuple(SimplicialMap(X, Y, _images_from_json(X, Y, t), name=f"f{k + 1}")
                 for k, (X, t) in enumerate(zip(stages, doc["maps"])))
    return Filtration(stages, incs, maps, name=doc.get("name", ""))


# --- quivers, presentations, generator maps, representations -----------------

def quiver_to_json(Q: DoubledQuiver) -> dict:
    return {
        "schema": "quiver.v1",
        "hasse": Q.hasse,
        "vertices": list(Q.vertices),
        "edges": [{"name": a.name, "s": a.source, "t": a.target, "star": a.name + "*"} for a in Q.arrows],
    }


def quiver_from_json(doc: dict) -> DoubledQuiver:
    validate_document(doc, "quiver.v1")
    vertices = set(doc["vertices"])
    for e in doc["edges"]:
        if e["s"] not in vertices or e["t"] not in vertices or e["star"] != e["name"] + "*":
            raise DocumentError(f"malformed edge {e['name']!r}")
    return DoubledQuiver(tuple(doc["vertices"]),
                         tuple(Arrow(e["name"], e["s"], e["t"]) for e in doc["edges"]),
                         doc.get("hasse", False))


def presentation_to_json(P: _pres.Presentation) -> dict:
    return _pres.to_json(P)


def presentation_from_json(doc: dict) -> _pres.Presentation:
    validate_document(doc, "presentation.v1")
    try:
        return _pres.from_json(doc)
    except _pres.FormatError as e:
        raise DocumentError(str(e)) from None


def genmap_to_json(g: GeneratorMap) -> dict:
    P = g.source_presentation
    return {
        "schema": "genmap.v1",
        "name": g.name,
        "source_presentation": presentation_to_json(P),
        "target_presentation": presentation_to_json(g.target_presentation),
        "images": {x: g.images[x].to_json() for x in P.vertex_gens + P.edge_gens},
    }


def genmap_from_json(doc: dict) -> GeneratorMap:
    validate_document(doc, "genmap.v1")
    src = presentation_from_json(doc["source_presentation"])
    if doc["target_presentation"] == doc["source_presentation"]:
        tgt = src
    else:
        tgt = presentation_from_json(doc["target_presentation"])
    known = set(tgt.alphabet)
    images = {}
    for x, poly in doc["images"].items():
        p = StarPolynomial.from_json(poly)
        bad = {c for w in p.words() for c in w} - known
        if bad:
            raise DocumentError(f"image of {x} uses unknown generators {sorted(bad)[:3]}")
        images[x] = p
    return GeneratorMap(src, tgt, images, name=doc.get("name", ""))


def rep_to_json(rep: _rep.MatrixRep) -> dict:
    return _rep.to_json(rep)


def rep_from_json(doc: dict) -> _rep.MatrixRep:
    validate_document(doc, "rep.v1")
    return _rep.from_json(doc)


_LOADERS = {"sset.v1": sset_from_json, "smap.v1": smap_from_json, "filtration.v1": filtration_from_json,
            "quiver.v1": quiver_from_json, "presentation.v1": presentation_from_json,
            "genmap.v1": genmap_from_json, "rep.v1": rep_from_json}
_DUMPERS = [(FiniteSimplicialSet, sset_to_json), (SimplicialMap, smap_to_json),
            (Filtration, filtration_to_json), (DoubledQuiver, quiver_to_json),
            (_pres.Presentation, presentation_to_json), (GeneratorMap, genmap_to_json),
            (_rep.MatrixRep, rep_to_json)]


def load(doc: dict):
    """Build the object described by any supported document."""
    return _LOADERS[validate_document(doc)](doc)


def to_document(obj) -> dict:
    for cls, fn in _DUMPERS:
        if isinstance(obj, cls):
            return fn(obj)
    raise DocumentError(f"cannot serialize {type(obj).__name__}")


def read(path: str):
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as e:
            raise DocumentError(f"{path}: invalid JSON ({e})") from None
    return load(doc)


def write(obj, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(to_document(obj)))
