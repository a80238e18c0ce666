"""Generators and relations of the universal *-algebra attached to a simplicial set.

The algebra is built on the doubled quiver of ``Nd(Sd X)``: one positive
generator per vertex of the quiver, one generator per arrow, and its
adjoint per reversed arrow.  Relation instances fall into five schemas:

* ``Concat``           ``xy`` is the path ``xy`` when ``t(x) = s(y)``, else ``0``
* ``PartialIsometry``  ``xx* = s(x)`` and ``x*x = t(x)``
* ``LeftUnit``         ``vx = x`` when ``s(x) = v``, else ``0``
* ``RightUnit``        ``xv = x`` when ``t(x) = v``, else ``0``
* ``ApproxUnit``       finite vertex sums converge to the identity; for a
  finite simplicial set this is the single relation ``sum(v) = 1``
"""
from __future__ import annotations

import enum
import json
import string
from dataclasses import dataclass, field
from functools import cached_property

from .polynomial import StarPolynomial
from .poset import DoubledQuiver, doubled_quiver, nd_poset
from .sset import FiniteSimplicialSet
from .subdivision import subdivide

LAMBDA_NOTE = ("lim over finite vertex sets L of sum_{v in L} v w = w for every vertex w; "
               "for finitely many vertices this is sum_v v = 1")

_LETTERS = [c for c in string.ascii_lowercase if c not in "vx"]


class Schema(str, enum.Enum):
    CONCAT = "Concat"
    PARTIAL_ISOMETRY = "PartialIsometry"
    LEFT_UNIT = "LeftUnit"
    RIGHT_UNIT = "RightUnit"
    APPROX_UNIT = "ApproxUnit"


@dataclass(frozen=True)
class RelationInstance:
    schema: Schema
    lhs: StarPolynomial
    rhs: StarPolynomial

    @property
    def is_trivial(self) -> bool:
        return self.lhs == self.rhs

    def format(self) -> str:
        return f"{self.lhs.format()} = {self.rhs.format()}"


def vertex_names(n: int) -> list[str]:
    if n <= len(_LETTERS):
        return _LETTERS[:n]
    return [f"v{k + 1}" for k in range(n)]


@dataclass(eq=False)
class Presentation:
    """Generators, their quiver data and (lazily) the relation instances."""

    vertex_gens: tuple[str, ...]
    edge_gens: tuple[str, ...]
    source: dict[str, str]
    target: dict[str, str]
    elements: dict[str, str]
    unital: bool = True
    lambda_note: str = LAMBDA_NOTE
    name: str = ""
    _memo: dict = field(default_factory=dict, repr=False)

    def __eq__(self, other):
        if not isinstance(other, Presentation):
            return NotImplemented
        return (self.vertex_gens == other.vertex_gens and self.edge_gens == other.edge_gens
                and self.source == other.source and self.target == other.target
                and self.elements == other.elements and self.unital == other.unital)

    __hash__ = object.__hash__

    @property
    def starred_gens(self) -> tuple[str, ...]:
        return tuple(x + "*" for x in self.edge_gens)

    @property
    def edge_letters(self) -> tuple[str, ...]:
        return self.edge_gens + self.starred_gens

    @property
    def alphabet(self) -> tuple[str, ...]:
        """All letters in the reduction order: vertices < arrows < reversed arrows."""
        return self.vertex_gens + self.edge_letters

    def is_vertex(self, letter: str) -> bool:
        return letter in self._vertex_set

    @cached_property
    def _vertex_set(self) -> frozenset:
        return frozenset(self.vertex_gens)

    def star(self, letter: str) -> str:
        if letter in self._vertex_set:
            return letter
        return letter[:-1] if letter.endswith("*") else letter + "*"

    def s(self, letter: str) -> str:
        if letter.endswith("*"):
            return self.target[letter[:-1]]
        return self.source[letter]

    def t(self, letter: str) -> str:
        if letter.endswith("*"):
            return self.source[letter[:-1]]
        return self.target[letter]

    def adjoint(self, p: StarPolynomial) -> StarPolynomial:
        return p.adjoint(self.star)

    def unit_sum(self) -> StarPolynomial:
        return StarPolynomial.sum_of(self.vertex_gens)

    def relations(self):
        """Relation instances in schema order."""
        if "relations" not in self._memo:
            self._memo["relations"] = tuple(self._generate())
        return self._memo["relations"]

    def _generate(self):
        W = StarPolynomial.word
        Z = StarPolynomial.zero()
        letters = self.edge_letters
        for x in letters:
            for y in letters:
                rhs = W(x, y) if self.t(x) == self.s(y) else Z
                yield RelationInstance(Schema.CONCAT, W(x, y), rhs)
        for x in self.edge_gens:
            yield RelationInstance(Schema.PARTIAL_ISOMETRY, W(x, x + "*"), W(self.s(x)))
            yield RelationInstance(Schema.PARTIAL_ISOMETRY, W(x + "*", x), W(self.t(x)))
        for v in self.vertex_gens:
            for x in letters:
                yield RelationInstance(Schema.LEFT_UNIT, W(v, x), W(x) if self.s(x) == v else Z)
        for v in self.vertex_gens:
            for x in letters:
                yield RelationInstance(Schema.RIGHT_UNIT, W(x, v), W(x) if self.t(x) == v else Z)
        if self.unital:
            yield RelationInstance(Schema.APPROX_UNIT, self.unit_sum(), StarPolynomial.one())

    def undeclared(self) -> list[str]:
        """Letters used by some relation but not declared as generators."""
        known = set(self.alphabet)
        bad = set()
        for r in self.relations():
            for p in (r.lhs, r.rhs):
                for w in p.words():
                    bad.update(x for x in w if x not in known)
        return sorted(bad)


def presentation_from_quiver(Q: DoubledQuiver, name: str = "") -> Presentation:
    names = vertex_names(len(Q.vertices))
    gen_of = dict(zip(Q.vertices, names))
    source = {a.name: gen_of[a.source] for a in Q.arrows}
    target = {a.name: gen_of[a.target] for a in Q.arrows}
    return Presentation(tuple(names), tuple(a.name for a in Q.arrows), source, target,
                        dict(zip(names, Q.vertices)), unital=True, name=name)


def present(X: FiniteSimplicialSet, hasse: bool = False) -> Presentation:
    """Presentation attached to ``X`` through ``Sd``, ``Nd`` and the doubled quiver."""
    key = ("presentation", hasse)
    if key in X._memo:
        return X._memo[key]
    sd = subdivide(X).sd
    Q = doubled_quiver(nd_poset(sd), hasse=hasse)
    P = presentation_from_quiver(Q, name=X.name)
    P._memo["quiver"] = Q
    P._memo["space"] = X
    X._memo[key] = P
    return P


def generator_of(P: Presentation) -> dict[str, str]:
    """Map from poset elements to vertex generator names."""
    return {e: g for g, e in P.elements.items()}


# --- emission ---------------------------------------------------------------

class FormatError(ValueError):
    pass


def to_json(P: Presentation) -> dict:
    return {
        "schema": "presentation.v1",
        "name": P.name,
        "unital": P.unital,
        "lambda_note": P.lambda_note,
        "vertices": [{"name": g, "element": P.elements[g], "positive": True, "self_adjoint": True}
                     for g in P.vertex_gens],
        "edges": [{"name": x, "s": P.source[x], "t": P.target[x], "star": x + "*"}
                  for x in P.edge_gens],
        "relations": [{"schema": r.schema.value, "lhs": r.lhs.to_json(), "rhs": r.rhs.to_json()}
                      for r in P.relations()],
    }


def from_json(doc: dict) -> Presentation:
    if doc.get("schema") != "presentation.v1":
        raise FormatError("not a presentation.v1 document")
    P = Presentation(
        tuple(v["name"] for v in doc["vertices"]),
        tuple(e["name"] for e in doc["edges"]),
        {e["name"]: e["s"] for e in doc["edges"]},
        {e["name"]: e["t"] for e in doc["edges"]},
        {v["name"]: v["element"] for v in doc["vertices"]},
        unital=doc["unital"],
        lambda_note=doc.get("lambda_note", LAMBDA_NOTE),
        name=doc.get("name", ""),
    )
    given = tuple(RelationInstance(Schema(r["schema"]), StarPolynomial.from_json(r["lhs"]),
                                   StarPolynomial.from_json(r["rhs"])) for r in doc["relations"])
    if given != P.relations():
        raise FormatError("relations do not match the declared generators")
    return P


def to_text(P: Presentation) -> str:
    lines = [f"# presentation of {P.name or 'X'}",
             f"# vertices (positive, self-adjoint): {' '.join(P.vertex_gens)}",
             "# edges: " + ", ".join(f"{x}: {P.source[x]} -> {P.target[x]}" for x in P.edge_gens)]
    if not P.unital:
        lines.append(f"# {P.lambda_note}")
    current = None
    for r in P.relations():
        if r.schema != current:
            current = r.schema
            lines.append(f"# {current.value}")
        lines.append(r.format())
    return "\n".join(lines) + "\n"


def emit(P: Presentation, format: str = "json") -> str:
    if format == "json":
        return json.dumps(to_json(P), indent=1) + "\n"
    if format == "text":
        return to_text(P)
    raise FormatError(f"unknown format {format!r}")


def parse(document: str) -> Presentation:
    return from_json(json.loads(document))
