"""Cylinders, simplicial homotopy diagrams and the endpoint algebra of the rotation homotopy.

Coface convention: ``d^0: Delta^0 -> Delta^1`` misses vertex 0, so
``d^0 x 1`` is the end of the cylinder over vertex 1 and ``d^1 x 1`` the end
over vertex 0.  A diagram is valid when ``gamma . (d^0 x 1) = f1`` and
``gamma . (d^1 x 1) = f2``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .functor import (GeneratorMap, Status, compose_genmaps, induced_hom, is_proper)
from .polynomial import StarPolynomial
from .presentation import present
from .rewrite import DEFAULT_BOUND, Decision, compile_system, decide_equal
from .sset import (FiniteSimplicialSet, Simplex, SimplicialError, SimplicialMap, compose,
                   evaluate_map, product, product_simplex, projection, standard_simplex)

OMEGA_NOTE = ("omega_t = [[cos(pi t/2), sin(pi t/2)], [-sin(pi t/2), cos(pi t/2)]]; "
              "only t = 0 (identity) and t = 1 (quarter turn) are evaluated")
OMEGA = {0: ((1, 0), (0, 1)), 1: ((0, 1), (-1, 0))}


@dataclass(eq=False)
class Cylinder:
    space: FiniteSimplicialSet
    base: FiniteSimplicialSet
    d0: SimplicialMap
    d1: SimplicialMap

    @property
    def projection(self) -> SimplicialMap:
        return projection(self.space, 1)


def _end(C: FiniteSimplicialSet, I: FiniteSimplicialSet, X: FiniteSimplicialSet, vertex: str, name: str):
    images = {}
    for sid, n in X.dims.items():
        v = Simplex(vertex, tuple(range(n - 1, -1, -1)), n)
        images[sid] = product_simplex(I, X, v, X.simplex(sid))
    return SimplicialMap(X, C, images, name=name)


def cylinder(X: FiniteSimplicialSet) -> Cylinder:
    """``Delta^1 x X`` with its two end inclusions."""
    if "cylinder" in X._memo:
        return X._memo["cylinder"]
    I = standard_simplex(1)
    C = product(I, X)
    out = Cylinder(C, X, _end(C, I, X, "1", "d0x1"), _end(C, I, X, "0", "d1x1"))
    X._memo["cylinder"] = out
    return out


@dataclass(eq=False)
class HomotopyDiagram:
    f1: SimplicialMap
    f2: SimplicialMap
    gamma: SimplicialMap
    cyl: Cylinder

    def __post_init__(self):
        X, Y = self.f1.source, self.f1.target
        if self.f2.source != X or self.f2.target != Y:
            raise SimplicialError("f1 and f2 must have the same source and target")
        if self.gamma.source is not self.cyl.space and self.gamma.source != self.cyl.space:
            raise SimplicialError("gamma must be defined on the cylinder")
        if self.gamma.target != Y or self.cyl.base != X:
            raise SimplicialError("gamma and the cylinder do not match f1, f2")


def diagram(f1: SimplicialMap, f2: SimplicialMap, gamma: SimplicialMap) -> HomotopyDiagram:
    return HomotopyDiagram(f1, f2, gamma, cylinder(f1.source))


def constant_homotopy(f: SimplicialMap) -> HomotopyDiagram:
    """``gamma = f . pr_2``, a homotopy from ``f`` to itself."""
    cyl = cylinder(f.source)
    gamma = compose(f, cyl.projection)
    gamma.name = f"{f.name}.pr2"
    return HomotopyDiagram(f, f, gamma, cyl)


@dataclass
class HomotopyVerdict:
    valid: bool
    witness: tuple[str, str] | None = None
    proper: dict[str, bool] | None = None

    @property
    def ok(self) -> bool:
        return self.valid and (self.proper is None or all(self.proper.values()))


def verify_homotopy(d: HomotopyDiagram, require_proper: bool = False) -> HomotopyVerdict:
    """Both triangles, checked on every nondegenerate simplex of the base."""
    for end, f in (("d0x1", d.f1), ("d1x1", d.f2)):
        inc = getattr(d.cyl, end[:2])
        for sid in inc.source:
            if evaluate_map(d.gamma, inc.images[sid]) != f.images[sid]:
                return HomotopyVerdict(False, (end, sid))
    proper = None
    if require_proper:
        proper = {name: is_proper(m).proper for name, m in
                  (("f1", d.f1), ("f2", d.f2), ("gamma", d.gamma))}
    return HomotopyVerdict(True, None, proper)


# --- endpoint algebra -------------------------------------------------------

Matrix = tuple[tuple[StarPolynomial, StarPolynomial], tuple[StarPolynomial, StarPolynomial]]


def _matmul(A, B) -> Matrix:
    def entry(i, j):
        acc = StarPolynomial()
        for k in range(2):
            a, b = A[i][k], B[k][j]
            a = a if isinstance(a, StarPolynomial) else StarPolynomial.one() * a
            b = b if isinstance(b, StarPolynomial) else StarPolynomial.one() * b
            acc = acc + a * b
        return acc
    return tuple(tuple(entry(i, j) for j in range(2)) for i in range(2))


def _transpose(M):
    return tuple(tuple(M[j][i] for j in range(2)) for i in range(2))


def rotate(diag: Matrix, t: int) -> Matrix:
    """``omega_t . diag . omega_t^{-1}`` at an endpoint ``t``; the inverse of a rotation is its transpose."""
    w = OMEGA[t]
    return _matmul(_matmul(w, diag), _transpose(w))


@dataclass
class EtaEntry:
    generator: str
    matrices: dict[int, Matrix]
    decisions: dict[str, Decision]


@dataclass
class EtaCertificate:
    entries: list[EtaEntry]
    omega: str = OMEGA_NOTE
    operator_checks: dict[str, Decision] = field(default_factory=dict)
    corner_step: str = ("the (1,1) entry is read off after checking the off-diagonal entries vanish; "
                        "this stands for the formal inverse of the corner embedding")

    @property
    def status(self) -> Status:
        decisions = [v for e in self.entries for v in e.decisions.values()]
        decisions += list(self.operator_checks.values())
        if all(v == Decision.EQUAL for v in decisions):
            return Status.PASS
        return Status.FAIL if Decision.DISTINCT in decisions else Status.UNKNOWN

    def failures(self) -> list[tuple[str, str, Decision]]:
        out = [(e.generator, k, v) for e in self.entries for k, v in e.decisions.items()
               if v != Decision.EQUAL]
        out += [("operator", k, v) for k, v in self.operator_checks.items() if v != Decision.EQUAL]
        return out


def eta_endpoints(d: HomotopyDiagram, bound: int = DEFAULT_BOUND,
                  check_operator: bool = True) -> EtaCertificate:
    """Endpoint identities ``ev_t . eta = (d^t x 1)~`` on every generator of the cylinder.

    With ``check_operator`` the homotopy operator is also checked on
    generators: ``(d^0 x 1)~ . gamma~ = f1~`` and ``(d^1 x 1)~ . gamma~ = f2~``.
    """
    base = d.cyl.base
    rs = compile_system(present(base), bound)
    e0, e1 = induced_hom(d.cyl.d0), induced_hom(d.cyl.d1)
    zero = StarPolynomial()
    entries = []
    for g in e0.source_presentation.alphabet:
        A, B = e0.image(g), e1.image(g)
        D = ((A, zero), (zero, B))
        mats = {t: rotate(D, t) for t in (0, 1)}
        decisions = {}
        for t, expect in ((0, A), (1, B)):
            M = mats[t]
            decisions[f"t={t} (1,1)"] = decide_equal(rs, M[0][0], expect)
            decisions[f"t={t} (1,2)"] = decide_equal(rs, M[0][1], zero)
            decisions[f"t={t} (2,1)"] = decide_equal(rs, M[1][0], zero)
        entries.append(EtaEntry(g, mats, decisions))
    cert = EtaCertificate(entries)
    if check_operator:
        gt = induced_hom(d.gamma)
        for label, end, f in (("d0x1", e0, d.f1), ("d1x1", e1, d.f2)):
            comp = compose_genmaps(gt, end, bound)
            target = induced_hom(f)
            for x in target.source_presentation.alphabet:
                cert.operator_checks[f"{label}: {x}"] = decide_equal(rs, comp.image(x), target.image(x))
    return cert


def operator_map(d: HomotopyDiagram, t: int, bound: int = DEFAULT_BOUND) -> GeneratorMap:
    """``ev_t . eta . gamma~`` as a generator map from the target's presentation."""
    end = induced_hom(d.cyl.d0 if t == 0 else d.cyl.d1)
    return compose_genmaps(induced_hom(d.gamma), end, bound)
