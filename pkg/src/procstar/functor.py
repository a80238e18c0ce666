"""Proper maps and the contravariant generator-level maps they induce.

A simplicial map ``f: X -> Y`` gives, through ``Nd(Sd f)``, an assignment
``f~`` from generators of the presentation of ``Y`` to sums of generators
of the presentation of ``X``: a vertex goes to the sum of its preimages,
an arrow to the sum of all arrows whose ends lie over its ends, and
adjoints go to adjoints.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .polynomial import StarPolynomial
from .poset import PosetMap, nd_functor
from .presentation import Presentation, RelationInstance, generator_of, present
from .rewrite import DEFAULT_BOUND, Decision, RewriteSystem, compile_system, decide_equal
from .sset import SimplicialError, SimplicialMap, compose, validate_map
from .subdivision import subdivide_map


class Properness(str, enum.Enum):
    PROPER = "PROPER"
    PROPER_ON_WINDOW = "PROPER_ON_WINDOW"
    NOT_PROPER = "NOT_PROPER"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class ProperVerdict:
    verdict: Properness
    max_preimage: int | None = None
    witness: str | None = None
    history: tuple[int, ...] = ()

    @property
    def proper(self) -> bool:
        return self.verdict in (Properness.PROPER, Properness.PROPER_ON_WINDOW)


class FiltrationError(SimplicialError):
    pass


@dataclass(eq=False)
class Filtration:
    """Finite window ``X_1 -> X_2 -> ...`` onto an infinite source, with maps ``X_k -> target``."""

    stages: tuple
    inclusions: tuple
    maps: tuple
    name: str = ""

    @property
    def target(self):
        return self.maps[0].target

    def check(self) -> None:
        if not self.stages or len(self.maps) != len(self.stages) or len(self.inclusions) != len(self.stages) - 1:
            raise FiltrationError("need one map per stage and one inclusion between consecutive stages")
        for k, inc in enumerate(self.inclusions):
            if inc.source is not self.stages[k] or inc.target is not self.stages[k + 1]:
                raise FiltrationError(f"inclusion {k} does not connect stages {k} and {k + 1}")
            if len(set(i.base for i in inc.images.values())) != len(inc.images) or any(
                    i.deg for i in inc.images.values()):
                raise FiltrationError(f"inclusion {k} is not injective on nondegenerate simplices")
            if compose(self.maps[k + 1], inc) != self.maps[k]:
                raise FiltrationError(f"map on stage {k + 1} does not restrict to stage {k}")
        for f, X in zip(self.maps, self.stages):
            if f.source is not X or f.target is not self.target:
                raise FiltrationError("stage maps must share one target")
            if validate_map(f):
                raise FiltrationError(f"stage map {f.name!r} is not simplicial")


def _finite_verdict(f: SimplicialMap) -> ProperVerdict:
    sizes = nd_functor(f).preimage_sizes()
    return ProperVerdict(Properness.PROPER, max(sizes.values(), default=0))


def is_proper(f: SimplicialMap | Filtration) -> ProperVerdict:
    """Finite preimages in the nondegenerate poset.

    Finite maps are always proper.  A filtration is judged on its window:
    a target element whose preimage grows at every stage is a witness of
    non-properness, stable preimages over the last two stages give
    ``PROPER_ON_WINDOW``, anything else is ``UNKNOWN``.
    """
    if isinstance(f, SimplicialMap):
        return _finite_verdict(f)
    f.check()
    sizes = [nd_functor(m).preimage_sizes() for m in f.maps]
    top = max((max(s.values(), default=0) for s in sizes), default=0)
    if len(sizes) >= 2:
        for e in f.target:
            hist = tuple(s[e] for s in sizes)
            if all(b > a for a, b in zip(hist, hist[1:])):
                return ProperVerdict(Properness.NOT_PROPER, top, e, hist)
        if sizes[-1] == sizes[-2]:
            return ProperVerdict(Properness.PROPER_ON_WINDOW, top)
    return ProperVerdict(Properness.UNKNOWN, top)


# --- generator maps ---------------------------------------------------------

class GeneratorMapError(ValueError):
    pass


@dataclass(eq=False)
class GeneratorMap:
    """Images of the generators of ``source_presentation`` in ``target_presentation``."""

    source_presentation: Presentation
    target_presentation: Presentation
    images: dict[str, StarPolynomial]
    name: str = ""
    _memo: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        P = self.source_presentation
        missing = [g for g in P.vertex_gens + P.edge_gens if g not in self.images]
        if missing:
            raise GeneratorMapError(f"no image for {missing[:3]}")
        full = {}
        for g in P.vertex_gens + P.edge_gens:
            full[g] = self.images[g]
        for x in P.edge_gens:
            full[x + "*"] = self.target_presentation.adjoint(full[x])
        given = {k: v for k, v in self.images.items() if k.endswith("*")}
        for k, v in given.items():
            if full.get(k) != v:
                raise GeneratorMapError(f"image of {k} is not the adjoint of the image of {k[:-1]}")
        self.images = full

    def image(self, letter: str) -> StarPolynomial:
        return self.images[letter]

    def apply(self, p: StarPolynomial) -> StarPolynomial:
        return p.substitute(self.image)


def _sum(letters) -> StarPolynomial:
    return StarPolynomial.sum_of(letters)


def generator_map_from_poset_map(phi: PosetMap, P_source: Presentation, P_target: Presentation,
                                 name: str = "") -> GeneratorMap:
    """``f~`` for a poset map ``phi: Nd(Sd X) -> Nd(Sd Y)``, from ``P(Y)`` to ``P(X)``."""
    gen_x = generator_of(P_target)
    Qx = P_target._memo["quiver"]
    over_vertex: dict[str, list[str]] = {}
    for a in phi.source.elements:
        over_vertex.setdefault(phi.images[a], []).append(gen_x[a])
    over_pair: dict[tuple[str, str], list[str]] = {}
    for arrow in Qx.arrows:
        key = (phi.images[arrow.source], phi.images[arrow.target])
        over_pair.setdefault(key, []).append(arrow.name)
    images = {}
    for v in P_source.vertex_gens:
        images[v] = _sum(over_vertex.get(P_source.elements[v], ()))
    for x in P_source.edge_gens:
        s = P_source.elements[P_source.source[x]]
        t = P_source.elements[P_source.target[x]]
        images[x] = _sum(over_pair.get((s, t), ()))
    return GeneratorMap(P_source, P_target, images, name=name)


def induced_hom(f: SimplicialMap, hasse: bool = False) -> GeneratorMap:
    """The generator map ``f~: P(target) -> P(source)`` computed from ``Nd(Sd f)``."""
    key = ("induced", hasse)
    if key in f._memo:
        return f._memo[key]
    P_source = present(f.target, hasse=hasse)
    P_target = present(f.source, hasse=hasse)
    phi = nd_functor(subdivide_map(f))
    out = generator_map_from_poset_map(phi, P_source, P_target, name=f"{f.name}~")
    f._memo[key] = out
    return out


def identity_genmap(P: Presentation) -> GeneratorMap:
    return GeneratorMap(P, P, {g: StarPolynomial.word(g) for g in P.vertex_gens + P.edge_gens},
                        name="id")


# --- verification -----------------------------------------------------------

class Status(str, enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class RelationCheck:
    relation: RelationInstance | None
    status: Status
    residual: StarPolynomial

    def describe(self) -> str:
        what = self.relation.format() if self.relation else "unit"
        return f"{self.status.value}: {what} (normal form of difference: {self.residual.format()})"


@dataclass
class PreservationReport:
    checked: int
    failures: list[RelationCheck]
    unknowns: list[RelationCheck]
    unit: Status

    @property
    def status(self) -> Status:
        if self.failures or self.unit == Status.FAIL:
            return Status.FAIL
        if self.unknowns or self.unit == Status.UNKNOWN:
            return Status.UNKNOWN
        return Status.PASS

    @property
    def ok(self) -> bool:
        return self.status == Status.PASS


def _status(rs: RewriteSystem, p: StarPolynomial, q: StarPolynomial) -> tuple[Status, StarPolynomial]:
    d = decide_equal(rs, p, q)
    residual = rs.normal_form(p - q) if d != Decision.EQUAL else StarPolynomial()
    return {Decision.EQUAL: Status.PASS, Decision.DISTINCT: Status.FAIL,
            Decision.UNKNOWN: Status.UNKNOWN}[d], residual


def verify_relation_preservation(g: GeneratorMap, bound: int = DEFAULT_BOUND,
                                 rs: RewriteSystem | None = None) -> PreservationReport:
    """Normal forms of ``g(lhs) - g(rhs)`` for every relation instance, and ``g(1) = 1``."""
    rs = rs or compile_system(g.target_presentation, bound)
    failures, unknowns = [], []
    checked = 0
    for r in g.source_presentation.relations():
        checked += 1
        if r.is_trivial:
            continue
        status, residual = _status(rs, g.apply(r.lhs), g.apply(r.rhs))
        if status == Status.FAIL:
            failures.append(RelationCheck(r, status, residual))
        elif status == Status.UNKNOWN:
            unknowns.append(RelationCheck(r, status, residual))
    unit = Status.PASS
    if g.source_presentation.unital:
        unit, _ = _status(rs, g.apply(g.source_presentation.unit_sum()), StarPolynomial.one())
    return PreservationReport(checked, failures, unknowns, unit)


def compose_genmaps(g1: GeneratorMap, g2: GeneratorMap, bound: int = DEFAULT_BOUND) -> GeneratorMap:
    """Apply ``g1`` then ``g2``; images are normalized in the final presentation."""
    if g1.target_presentation is not g2.source_presentation and g1.target_presentation != g2.source_presentation:
        raise GeneratorMapError("generator maps are not composable")
    P = g2.target_presentation
    rs = compile_system(P, bound)
    src = g1.source_presentation
    images = {x: rs.normal_form(g2.apply(g1.image(x))) for x in src.vertex_gens + src.edge_gens}
    return GeneratorMap(src, P, images, name=f"{g2.name}.{g1.name}")


def compare_genmaps(g: GeneratorMap, h: GeneratorMap, bound: int = DEFAULT_BOUND) -> dict[str, Decision]:
    """Per-generator decision of ``g(x) = h(x)``."""
    if g.source_presentation != h.source_presentation or g.target_presentation != h.target_presentation:
        raise GeneratorMapError("generator maps have different presentations")
    rs = compile_system(g.target_presentation, bound)
    return {x: decide_equal(rs, g.image(x), h.image(x)) for x in g.source_presentation.alphabet}


def genmaps_equal(g: GeneratorMap, h: GeneratorMap, bound: int = DEFAULT_BOUND) -> Decision:
    decisions = set(compare_genmaps(g, h, bound).values())
    if decisions <= {Decision.EQUAL}:
        return Decision.EQUAL
    return Decision.DISTINCT if Decision.DISTINCT in decisions else Decision.UNKNOWN
