"""Finite-dimensional matrix representations of a presentation.

Vertices are positive, so a representation assigns a positive semidefinite
matrix to each vertex generator and an arbitrary matrix to each arrow; the
reversed arrows get conjugate transposes.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .polynomial import StarPolynomial
from .presentation import Presentation

SEARCH_TOL = 1e-6


class RepresentationError(ValueError):
    pass


class ResidualError(RepresentationError):
    pass


@dataclass(eq=False)
class MatrixRep:
    dim: int
    images: dict[str, np.ndarray]

    def __post_init__(self):
        self.images = {k: np.asarray(v, dtype=complex) for k, v in self.images.items()}
        for k, v in self.images.items():
            if v.shape != (self.dim, self.dim):
                raise RepresentationError(f"image of {k} has shape {v.shape}")

    def matrix(self, letter: str) -> np.ndarray:
        if letter in self.images:
            return self.images[letter]
        if letter.endswith("*") and letter[:-1] in self.images:
            return self.images[letter[:-1]].conj().T
        raise RepresentationError(f"no image for generator {letter!r}")

    def evaluate(self, p: StarPolynomial) -> np.ndarray:
        out = np.zeros((self.dim, self.dim), dtype=complex)
        eye = np.eye(self.dim, dtype=complex)
        for w, c in p.items():
            m = eye
            for x in w:
                m = m @ self.matrix(x)
            out += c * m
        return out

    def __eq__(self, other):
        if not isinstance(other, MatrixRep):
            return NotImplemented
        return (self.dim == other.dim and self.images.keys() == other.images.keys()
                and all(np.array_equal(self.images[k], other.images[k]) for k in self.images))

    __hash__ = object.__hash__


def opnorm(m: np.ndarray) -> float:
    if not m.any():
        return 0.0
    return float(np.linalg.norm(m, 2))


def matrix_unit_rep(P: Presentation) -> MatrixRep:
    """Vertex ``v`` to the diagonal unit ``E_vv``, arrow ``x`` to ``E_{s(x), t(x)}``."""
    if not P.unital:
        raise RepresentationError("matrix-unit model needs finitely many vertices")
    n = len(P.vertex_gens)
    pos = {v: k for k, v in enumerate(P.vertex_gens)}
    images = {}
    for v in P.vertex_gens:
        m = np.zeros((n, n))
        m[pos[v], pos[v]] = 1
        images[v] = m
    for x in P.edge_gens:
        m = np.zeros((n, n))
        m[pos[P.source[x]], pos[P.target[x]]] = 1
        images[x] = m
    return MatrixRep(n, images)


@dataclass
class ResidualReport:
    residuals: list[float]
    relations: list

    @property
    def max(self) -> float:
        return max(self.residuals, default=0.0)

    def worst(self, k: int = 5):
        order = sorted(range(len(self.residuals)), key=lambda i: -self.residuals[i])
        return [(self.relations[i], self.residuals[i]) for i in order[:k]]


def _check_generators(rep: MatrixRep, P: Presentation):
    missing = [g for g in P.vertex_gens + P.edge_gens if g not in rep.images]
    if missing:
        raise RepresentationError(f"no image for generators {missing[:5]}")


def relation_residual(rep: MatrixRep, P: Presentation) -> ResidualReport:
    """Operator norm of ``lhs - rhs`` for every relation instance."""
    _check_generators(rep, P)
    rels = list(P.relations())
    return ResidualReport([opnorm(rep.evaluate(r.lhs - r.rhs)) for r in rels], rels)


def edge_incident(P: Presentation) -> list[str]:
    ends = set(P.source.values()) | set(P.target.values())
    return [v for v in P.vertex_gens if v in ends]


@dataclass
class VertexNormReport:
    norms: dict[str, float]
    residual: float
    tol: float
    too_large: list[str] = field(default_factory=list)
    not_projection: list[str] = field(default_factory=list)
    not_orthogonal: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.too_large or self.not_projection or self.not_orthogonal)


def vertex_norm_report(rep: MatrixRep, P: Presentation, tol: float = 1e-9,
                       check_residual: bool = True) -> VertexNormReport:
    """Vertex norms and the projection/orthogonality tests for edge-incident vertices.

    In a representation satisfying the relations within ``tol`` every
    vertex has norm at most ``1 + 10 tol``; edge-incident vertices are
    projections and pairwise orthogonal.
    """
    res = relation_residual(rep, P).max
    if check_residual and res > tol:
        raise ResidualError(f"relation residual {res:.3g} exceeds tolerance {tol:.3g}")
    report = VertexNormReport({v: opnorm(rep.matrix(v)) for v in P.vertex_gens}, res, tol)
    report.too_large = [v for v, n in report.norms.items() if n > 1 + 10 * tol]
    incident = edge_incident(P)
    for v in incident:
        m = rep.matrix(v)
        if opnorm(m @ m - m) > tol:
            report.not_projection.append(v)
    for v, w in itertools.combinations(incident, 2):
        if opnorm(rep.matrix(v) @ rep.matrix(w)) > tol:
            report.not_orthogonal.append((v, w))
    return report


def separation(rep: MatrixRep, p: StarPolynomial, q: StarPolynomial) -> float:
    return opnorm(rep.evaluate(p - q))


# --- numerical search -------------------------------------------------------

class _Objective:
    """Sum of squared Frobenius residuals, with its gradient.

    Parameters are one matrix ``B_v`` per vertex (image ``B_v^H B_v``) and
    one matrix per arrow.
    """

    def __init__(self, P: Presentation, dim: int):
        self.P, self.dim = P, dim
        self.letters = list(P.alphabet)
        index = {x: k for k, x in enumerate(self.letters)}
        words: dict[tuple, int] = {}
        rows, cols, vals = [], [], []
        for r, rel in enumerate(P.relations()):
            if rel.is_trivial:
                continue
            for w, c in (rel.lhs - rel.rhs).items():
                k = words.setdefault(w, len(words))
                rows.append(r)
                cols.append(k)
                vals.append(c)
        nrel = len(P.relations())
        self.coef = np.zeros((nrel, len(words)))
        np.add.at(self.coef, (rows, cols), vals)
        keep = np.abs(self.coef).sum(axis=1) > 0
        self.coef = self.coef[keep].astype(complex)
        self.coef_t = np.ascontiguousarray(self.coef.T)
        self.word_list = list(words)
        self.by_length: dict[int, tuple[np.ndarray, np.ndarray]] = {}
        for L in sorted({len(w) for w in words}):
            ids = [k for k, w in enumerate(self.word_list) if len(w) == L]
            idx = np.array([[index[x] for x in self.word_list[k]] for k in ids],
                           dtype=int).reshape(len(ids), L)
            # one-hot scatter matrices: letter at position j of each word
            onehot = np.zeros((L, len(self.letters), len(ids)), dtype=complex)
            for j in range(L):
                onehot[j, idx[:, j], np.arange(len(ids))] = 1
            self.by_length[L] = (np.array(ids, dtype=int), idx, onehot)
        self.nv = len(P.vertex_gens)
        self.ne = len(P.edge_gens)

    def letter_mats(self, B, X):
        V = np.conj(np.transpose(B, (0, 2, 1))) @ B
        Xs = np.conj(np.transpose(X, (0, 2, 1)))
        return np.concatenate([V, X, Xs], axis=0), V

    def __call__(self, B, X, grad: bool = True):
        d = self.dim
        M, _ = self.letter_mats(B, X)
        W = np.zeros((len(self.word_list), d, d), dtype=complex)
        prefixes = {}
        for L, (ids, idx, onehot) in self.by_length.items():
            if L == 0:
                W[ids] = np.eye(d)
                continue
            pre = [np.broadcast_to(np.eye(d, dtype=complex), (len(ids), d, d))]
            for j in range(L):
                pre.append(pre[-1] @ M[idx[:, j]])
            W[ids] = pre[-1]
            prefixes[L] = pre
        E = (self.coef @ W.reshape(len(W), d * d)).reshape(-1, d, d)
        loss = float(np.sum(np.abs(E) ** 2))
        if not grad:
            return loss, None
        GW = 2 * (self.coef_t @ E.reshape(len(E), d * d)).reshape(-1, d, d)
        GM = np.zeros_like(M)
        for L, (ids, idx, onehot) in self.by_length.items():
            if L == 0:
                continue
            pre = prefixes[L]
            suf = np.broadcast_to(np.eye(d, dtype=complex), (len(ids), d, d))
            g = GW[ids]
            for j in range(L - 1, -1, -1):
                left = pre[j]
                contrib = np.conj(np.transpose(left, (0, 2, 1))) @ g @ np.conj(np.transpose(suf, (0, 2, 1)))
                GM += (onehot[j] @ contrib.reshape(len(ids), d * d)).reshape(-1, d, d)
                suf = M[idx[:, j]] @ suf
        nv, ne = self.nv, self.ne
        GV = GM[:nv]
        GX = GM[nv:nv + ne] + np.conj(np.transpose(GM[nv + ne:], (0, 2, 1)))
        GB = B @ (GV + np.conj(np.transpose(GV, (0, 2, 1))))
        return loss, (GB, GX)

    def rep(self, B, X) -> MatrixRep:
        _, V = self.letter_mats(B, X)
        images = {v: V[k] for k, v in enumerate(self.P.vertex_gens)}
        images.update({x: X[k] for k, x in enumerate(self.P.edge_gens)})
        return MatrixRep(self.dim, images)


@dataclass
class SearchResult:
    rep: MatrixRep
    residual: float
    loss: float
    iterations: int
    converged: bool
    seed: int


def search_representation(P: Presentation, dim: int, iters: int = 10_000, seed: int = 0,
                          step: float = 0.01, restarts: int = 1, tol: float = SEARCH_TOL) -> SearchResult:
    """Gradient descent on the squared residuals from a seeded random start.

    Deterministic given the arguments.  Returns the best point seen; it is
    flagged converged when its maximal relation residual is at most ``tol``.
    """
    if dim < 1:
        raise RepresentationError("dimension must be positive")
    obj = _Objective(P, dim)
    rng = np.random.default_rng(seed)
    best = None
    for _ in range(max(1, restarts)):
        shape_b, shape_x = (obj.nv, dim, dim), (obj.ne, dim, dim)
        B = (rng.standard_normal(shape_b) + 1j * rng.standard_normal(shape_b)) * 0.3
        X = (rng.standard_normal(shape_x) + 1j * rng.standard_normal(shape_x)) * 0.3
        done = 0
        for it in range(iters):
            loss, (GB, GX) = obj(B, X)
            done = it + 1
            if not np.isfinite(loss):
                break
            if best is None or loss < best[0]:
                best = (loss, B.copy(), X.copy(), done)
            if it % 100 == 0 and relation_residual(obj.rep(B, X), P).max <= tol:
                break
            B = B - step * GB
            X = X - step * GX
        loss, _ = obj(B, X, grad=False)
        if np.isfinite(loss) and loss < best[0]:
            best = (loss, B, X, done)
        if relation_residual(obj.rep(best[1], best[2]), P).max <= tol:
            break
    loss, B, X, done = best
    rep = obj.rep(B, X)
    res = relation_residual(rep, P).max
    return SearchResult(rep, res, loss, done, res <= tol, seed)


# --- serialization ----------------------------------------------------------

def to_json(rep: MatrixRep) -> dict:
    return {
        "schema": "rep.v1",
        "dim": rep.dim,
        "images": {k: [[[float(z.real), float(z.imag)] for z in row] for row in m]
                   for k, m in rep.images.items()},
    }


def from_json(doc: dict) -> MatrixRep:
    if doc.get("schema") != "rep.v1":
        raise RepresentationError("not a rep.v1 document")
    images = {k: np.array([[complex(re, im) for re, im in row] for row in m], dtype=complex)
              for k, m in doc["images"].items()}
    return MatrixRep(int(doc["dim"]), images)
