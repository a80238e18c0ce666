"""Barycentric subdivision as a colimit of subdivided standard simplices.

A simplex of ``Sd X`` is represented by a pair ``(sigma, chain)`` where
``sigma`` is a nondegenerate simplex of ``X`` of dimension ``n`` and
``chain`` is a chain of nonempty subsets of ``[n]``.  Pairs are glued along
the face operators of ``X``; the gluing is resolved with a union-find over
pairs with strict chains.  Each class has a unique member whose chain ends
in the full set ``[n]``, which names the class.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from .sset import (FiniteSimplicialSet, Simplex, SimplicialError, SimplicialMap,
                   collapse_map, evaluate_map, insert_degeneracy, validate)

Subset = tuple[int, ...]
Chain = tuple[Subset, ...]


class UnionFind:
    def __init__(self):
        self.parent: dict = {}
        self.rank: dict = {}

    def add(self, x):
        if x not in self.parent:
            self.parent[x] = x
            self.rank[x] = 0

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return ra

    def groups(self) -> dict:
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return out


@lru_cache(maxsize=None)
def strict_chains(n: int) -> tuple[Chain, ...]:
    """All strict chains of nonempty subsets of ``[n]``, lexicographically sorted."""
    subsets = [c for k in range(1, n + 2) for c in itertools.combinations(range(n + 1), k)]
    out: list[Chain] = []

    def extend(chain: Chain):
        out.append(chain)
        top = set(chain[-1])
        for s in subsets:
            if len(s) > len(top) and top.issubset(s):
                extend(chain + (s,))

    for s in subsets:
        extend((s,))
    return tuple(sorted(out))


def _fmt(s: Subset) -> str:
    sep = "" if all(i < 10 for i in s) else "."
    return sep.join(map(str, s))


def sd_id(tau: str, chain: Chain) -> str:
    return f"{tau}[{'<'.join(_fmt(s) for s in chain)}]"


def _is_strict(chain) -> bool:
    return all(a != b for a, b in zip(chain, chain[1:]))


def _push(eta, chain) -> Chain:
    return tuple(tuple(sorted({eta(i) for i in s})) for s in chain)


def canonical(X: FiniteSimplicialSet, sigma: Simplex, chain) -> tuple[str, Chain, tuple[int, ...]]:
    """Normal form ``(tau, strict chain, degeneracy word)`` of the class of ``(sigma, chain)``.

    ``sigma`` may be any simplex of ``X`` and ``chain`` any weakly increasing
    chain of nonempty subsets of ``[dim sigma]``.
    """
    top = chain[-1]
    face = X.restrict(sigma, top)
    relabel = {v: k for k, v in enumerate(top)}
    chain = tuple(tuple(relabel[i] for i in s) for s in chain)
    chain = _push(collapse_map(face.deg), chain)
    strict = tuple(s for k, s in enumerate(chain) if k == 0 or s != chain[k - 1])
    word = sorted((j for j in range(len(chain) - 1) if chain[j] == chain[j + 1]), reverse=True)
    return face.base, strict, tuple(word)


@dataclass(eq=False)
class SubdivisionResult:
    sd: FiniteSimplicialSet
    provenance: dict[str, list[tuple[str, Chain]]]
    source: FiniteSimplicialSet
    rep: dict[str, tuple[str, Chain]] = field(default_factory=dict)

    def simplex_of(self, sigma: Simplex, chain) -> Simplex:
        """The simplex of ``Sd X`` represented by ``(sigma, chain)``."""
        tau, strict, word = canonical(self.source, sigma, chain)
        out = Simplex(sd_id(tau, strict), (), len(strict) - 1)
        for j in reversed(word):
            out = Simplex(out.base, insert_degeneracy(out.deg, j), out.dim + 1)
        return out


def subdivide(X: FiniteSimplicialSet, check: bool = True) -> SubdivisionResult:
    if "subdivision" in X._memo:
        return X._memo["subdivision"]
    if check:
        report = validate(X, extra_dims=0)
        if not report.ok:
            raise SimplicialError(f"invalid simplicial set: {report.violations[0]}")
    uf = UnionFind()
    degenerate: set = set()
    for sid, n in X.dims.items():
        for chain in strict_chains(n):
            uf.add((sid, chain))
    for sid, n in X.dims.items():
        if n == 0:
            continue
        for i in range(n + 1):
            f = X.faces[sid][i]
            eta = collapse_map(f.deg)

            def coface(j, i=i):
                return j if j < i else j + 1

            for chain in strict_chains(n - 1):
                left = (sid, _push(coface, chain))
                right = _push(eta, chain)
                if _is_strict(right):
                    uf.union(left, (f.base, right))
                else:
                    degenerate.add(left)
    dead = {uf.find(x) for x in degenerate}
    groups = uf.groups()
    rep: dict[str, tuple[str, Chain]] = {}
    prov: dict[str, list] = {}
    root_id: dict = {}
    for root, members in groups.items():
        if root in dead:
            continue
        full = [m for m in members if m[1][-1] == tuple(range(X.dims[m[0]] + 1))]
        if len(full) != 1:
            raise SimplicialError(f"subdivision class without a unique interior representative: {members}")
        tau, chain = full[0]
        name = sd_id(tau, chain)
        rep[name] = (tau, chain)
        prov[name] = sorted(members)
        root_id[root] = name

    def key(name):
        tau, chain = rep[name]
        sigma = X.simplex(tau)
        return (len(chain), tuple((X.index(X.restrict(sigma, s).base), s) for s in chain))

    order = sorted(rep, key=key)
    dims = {name: len(rep[name][1]) - 1 for name in order}
    result = SubdivisionResult(None, {name: prov[name] for name in order}, X,
                               {name: rep[name] for name in order})
    faces = {}
    for name in order:
        tau, chain = rep[name]
        k = len(chain) - 1
        if k == 0:
            continue
        fs = []
        for j in range(k + 1):
            sub = chain[:j] + chain[j + 1:]
            root = uf.find((tau, sub))
            if root in root_id:
                fs.append(Simplex(root_id[root], (), k - 1))
            else:
                fs.append(result.simplex_of(X.simplex(tau), sub))
        faces[name] = tuple(fs)
    result.sd = FiniteSimplicialSet(dims, faces, name=f"Sd({X.name})")
    result.sd._memo["subdivided_from"] = X
    X._memo["subdivision"] = result
    return result


def subdivide_map(f: SimplicialMap) -> SimplicialMap:
    """``Sd(f)``, computed on class representatives."""
    if "sd" in f._memo:
        return f._memo["sd"]
    src, tgt = subdivide(f.source), subdivide(f.target)
    images = {}
    for name, (tau, chain) in src.rep.items():
        images[name] = tgt.simplex_of(evaluate_map(f, f.source.simplex(tau)), chain)
    out = SimplicialMap(src.sd, tgt.sd, images, name=f"Sd({f.name})")
    f._memo["sd"] = out
    return out


# --- regularity -------------------------------------------------------------

@dataclass
class RegularityReport:
    per_simplex: dict[str, bool]
    reasons: dict[str, str]

    @property
    def regular(self) -> bool:
        return all(self.per_simplex.values())


def is_regular(X: FiniteSimplicialSet) -> RegularityReport:
    """Last-face pushout criterion for every nondegenerate simplex.

    ``x`` of dimension ``n`` passes when the faces of ``x`` spanned by vertex
    sets containing ``n`` are nondegenerate, pairwise distinct, and disjoint
    from the subcomplex generated by the last face ``d_n x``.
    """
    ok: dict[str, bool] = {}
    why: dict[str, str] = {}
    for sid, n in X.dims.items():
        ok[sid] = True
        if n == 0:
            continue
        x = X.simplex(sid)
        last = X.faces[sid][n]
        boundary = X.closure([last.base])
        seen: dict[str, tuple] = {}
        for k in range(0, n):
            for rest in itertools.combinations(range(n), k):
                verts = rest + (n,)
                y = X.restrict(x, verts)
                if y.deg:
                    ok[sid], why[sid] = False, f"face on {verts} is degenerate: {y}"
                elif y.base in boundary:
                    ok[sid], why[sid] = False, f"face on {verts} lies in the last face's subcomplex"
                elif y.base in seen:
                    ok[sid], why[sid] = False, f"faces on {seen[y.base]} and {verts} coincide"
                else:
                    seen[y.base] = verts
                    continue
                break
            if not ok[sid]:
                break
    return RegularityReport(ok, why)
