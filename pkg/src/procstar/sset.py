"""Finite simplicial sets stored by their nondegenerate simplices.

Every simplex is kept in Eilenberg-Zilber normal form: a nondegenerate
base together with a degeneracy word ``s_{i1} s_{i2} ... s_{ik}`` whose
indices are strictly decreasing left to right.  Only the faces of the
nondegenerate simplices are stored; faces and degeneracies of everything
else are derived from the simplicial identities.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence


class SimplicialError(ValueError):
    """Base class for malformed simplicial data."""


class DimensionError(SimplicialError):
    pass


class UnknownSimplexError(SimplicialError, KeyError):
    pass


@dataclass(frozen=True, order=True)
class Simplex:
    """A simplex ``s_{deg[0]} ... s_{deg[-1]}(base)`` of dimension ``dim``."""

    base: str
    deg: tuple[int, ...] = ()
    dim: int = 0

    @property
    def is_degenerate(self) -> bool:
        return bool(self.deg)

    @property
    def base_dim(self) -> int:
        return self.dim - len(self.deg)

    def __str__(self) -> str:
        if not self.deg:
            return self.base
        return "".join(f"s{i}" for i in self.deg) + f"({self.base})"


def check_degeneracy_word(deg: Sequence[int], base_dim: int) -> None:
    """Raise unless ``deg`` is a strictly decreasing word applicable to a ``base_dim`` simplex."""
    k = len(deg)
    for pos, i in enumerate(deg):
        if i < 0:
            raise DimensionError(f"negative degeneracy index in {list(deg)}")
        if pos and deg[pos - 1] <= i:
            raise SimplicialError(f"degeneracy word {list(deg)} is not strictly decreasing")
        # s_i acting on a simplex of dimension m needs i <= m
        if i > base_dim + (k - 1 - pos):
            raise DimensionError(f"degeneracy word {list(deg)} too large for dimension {base_dim}")


def insert_degeneracy(deg: Sequence[int], j: int) -> tuple[int, ...]:
    """Normal form of ``s_j s_{deg}`` using ``s_i s_k = s_{k+1} s_i`` for ``i <= k``."""
    out: list[int] = []
    for pos, i in enumerate(deg):
        if j <= i:
            out.append(i + 1)
        else:
            return tuple(out) + (j,) + tuple(deg[pos:])
    out.append(j)
    return tuple(out)


def collapse_map(deg: Sequence[int]) -> "callable":
    """The surjection of ordinals encoded by a normal-form degeneracy word."""
    idx = sorted(deg)

    def eta(j: int) -> int:
        return j - sum(1 for i in idx if i < j)

    return eta


def parse_operator(op) -> tuple[str, int]:
    if isinstance(op, str):
        kind, num = op[0], op[1:]
        if kind not in "ds" or not num.isdigit():
            raise SimplicialError(f"bad operator {op!r}")
        return kind, int(num)
    kind, num = op
    if kind not in ("d", "s"):
        raise SimplicialError(f"bad operator {op!r}")
    return kind, int(num)


@dataclass(eq=False)
class FiniteSimplicialSet:
    """Nondegenerate simplices (in a fixed order) with their face tables.

    ``dims`` maps each nondegenerate id to its dimension; ``faces`` maps the
    id of each nondegenerate simplex of dimension ``n >= 1`` to its ``n + 1``
    faces as normal-form :class:`Simplex` values.
    """

    dims: Mapping[str, int]
    faces: Mapping[str, tuple[Simplex, ...]]
    name: str = ""
    _memo: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.dims = dict(self.dims)
        self.faces = {k: tuple(v) for k, v in self.faces.items()}
        for sid, n in self.dims.items():
            if n < 0:
                raise DimensionError(f"negative dimension for {sid!r}")
            if n == 0 and self.faces.get(sid):
                raise SimplicialError(f"vertex {sid!r} cannot have faces")
            if n > 0 and sid not in self.faces:
                raise SimplicialError(f"missing faces for {sid!r}")
        for sid in self.faces:
            if sid not in self.dims:
                raise UnknownSimplexError(sid)
        self._order = {sid: k for k, sid in enumerate(self.dims)}

    # structural equality: same ids, dims and faces (order-insensitive)
    def __eq__(self, other):
        if not isinstance(other, FiniteSimplicialSet):
            return NotImplemented
        return self.dims == other.dims and self.faces == other.faces

    __hash__ = object.__hash__

    def __len__(self) -> int:
        return len(self.dims)

    def __contains__(self, sid) -> bool:
        return sid in self.dims

    def __iter__(self) -> Iterator[str]:
        return iter(self.dims)

    @property
    def max_dim(self) -> int:
        return max(self.dims.values(), default=-1)

    def index(self, sid: str) -> int:
        return self._order[sid]

    def nondegenerate(self, dim: int | None = None) -> list[str]:
        if dim is None:
            return list(self.dims)
        return [s for s, n in self.dims.items() if n == dim]

    def counts(self) -> list[int]:
        out = [0] * (self.max_dim + 1)
        for n in self.dims.values():
            out[n] += 1
        return out

    def simplex(self, sid: str) -> Simplex:
        if sid not in self.dims:
            raise UnknownSimplexError(sid)
        return Simplex(sid, (), self.dims[sid])

    def make(self, base: str, deg: Sequence[int] = ()) -> Simplex:
        if base not in self.dims:
            raise UnknownSimplexError(base)
        deg = tuple(deg)
        check_degeneracy_word(deg, self.dims[base])
        return Simplex(base, deg, self.dims[base] + len(deg))

    def degeneracy(self, s: Simplex, j: int) -> Simplex:
        if not 0 <= j <= s.dim:
            raise DimensionError(f"s{j} undefined on a {s.dim}-simplex")
        return Simplex(s.base, insert_degeneracy(s.deg, j), s.dim + 1)

    def face(self, s: Simplex, i: int) -> Simplex:
        if s.dim < 1 or not 0 <= i <= s.dim:
            raise DimensionError(f"d{i} undefined on a {s.dim}-simplex")
        # push d_i through the degeneracy word, left to right
        pending: list[int] = []
        for pos, j in enumerate(s.deg):
            if i < j:
                pending.append(j - 1)
            elif i in (j, j + 1):
                rest = tuple(s.deg[pos + 1:])
                out = Simplex(s.base, rest, s.base_dim + len(rest))
                return self._apply_degeneracies(out, pending)
            else:
                pending.append(j)
                i -= 1
        out = self.faces[s.base][i]
        return self._apply_degeneracies(out, pending)

    def _apply_degeneracies(self, s: Simplex, word: Sequence[int]) -> Simplex:
        for j in reversed(word):
            s = self.degeneracy(s, j)
        return s

    def apply(self, s: Simplex, operators: Sequence) -> Simplex:
        """Apply an operator word written in composition order (rightmost first)."""
        for op in reversed(list(operators)):
            kind, k = parse_operator(op)
            s = self.face(s, k) if kind == "d" else self.degeneracy(s, k)
        return s

    def restrict(self, s: Simplex, vertices: Iterable[int]) -> Simplex:
        """The face of ``s`` spanned by the given vertex indices of ``[dim s]``."""
        keep = set(vertices)
        for i in range(s.dim, -1, -1):
            if i not in keep:
                s = self.face(s, i)
        return s

    def simplices(self, dim: int) -> Iterator[Simplex]:
        """All simplices of dimension ``dim``, degenerate ones included."""
        for sid, n in self.dims.items():
            if n > dim:
                continue
            k = dim - n
            for combo in itertools.combinations(range(dim), k):
                yield Simplex(sid, tuple(sorted(combo, reverse=True)), dim)

    def closure(self, sids: Iterable[str]) -> set[str]:
        """Nondegenerate simplices of the subcomplex generated by ``sids``."""
        seen: set[str] = set()
        todo = list(sids)
        while todo:
            sid = todo.pop()
            if sid in seen:
                continue
            seen.add(sid)
            for f in self.faces.get(sid, ()):
                todo.append(f.base)
        return seen


def normalize(X: FiniteSimplicialSet, base: str, operator_word: Sequence = ()) -> Simplex:
    return X.apply(X.simplex(base), operator_word)


def face(X: FiniteSimplicialSet, s: Simplex, i: int) -> Simplex:
    return X.face(s, i)


def standard_simplex(n: int) -> FiniteSimplicialSet:
    """Delta^n, one nondegenerate simplex per nonempty subset of ``[n]``."""
    if n < 0:
        raise DimensionError("n must be non-negative")
    sep = "" if n < 10 else "."
    subsets = [c for k in range(1, n + 2) for c in itertools.combinations(range(n + 1), k)]
    subsets.sort()
    name = {c: sep.join(map(str, c)) for c in subsets}
    dims = {name[c]: len(c) - 1 for c in subsets}
    faces = {
        name[c]: tuple(Simplex(name[c[:i] + c[i + 1:]], (), len(c) - 2) for i in range(len(c)))
        for c in subsets if len(c) > 1
    }
    return FiniteSimplicialSet(dims, faces, name=f"Delta{n}")


def empty_set() -> FiniteSimplicialSet:
    return FiniteSimplicialSet({}, {}, name="empty")


def minimal_circle() -> FiniteSimplicialSet:
    """One vertex ``v`` and one edge ``e`` with both faces at ``v``."""
    v = Simplex("v", (), 0)
    return FiniteSimplicialSet({"v": 0, "e": 1}, {"e": (v, v)}, name="S1")


# --- validation -------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    kind: str
    simplex: str
    detail: str


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def __len__(self) -> int:
        return len(self.violations)


def validate(X: FiniteSimplicialSet, extra_dims: int = 2) -> ValidationReport:
    """Check the face table and the simplicial identities up to ``max_dim + extra_dims``."""
    report = ValidationReport()
    bad = set()
    for sid, n in X.dims.items():
        if n == 0:
            continue
        fs = X.faces[sid]
        if len(fs) != n + 1:
            report.violations.append(Violation("face-count", sid, f"{len(fs)} faces for dim {n}"))
            bad.add(sid)
            continue
        for i, f in enumerate(fs):
            try:
                if f.base not in X.dims:
                    raise UnknownSimplexError(f.base)
                check_degeneracy_word(f.deg, X.dims[f.base])
                if f.dim != n - 1 or X.dims[f.base] + len(f.deg) != n - 1:
                    raise DimensionError(f"d{i} has dimension {f.dim}")
            except SimplicialError as exc:
                report.violations.append(Violation("face-entry", sid, f"d{i}: {exc}"))
                bad.add(sid)
    if bad:
        return report
    top = X.max_dim + extra_dims
    # failures on degeneracies of a failing simplex are consequences, not reported again
    failing: set[str] = set()
    for dim in range(2, top + 1):
        for s in X.simplices(dim):
            if s.base in failing and s.deg:
                continue
            for j in range(1, dim + 1):
                for i in range(j):
                    lhs = X.face(X.face(s, j), i)
                    rhs = X.face(X.face(s, i), j - 1)
                    if lhs != rhs:
                        failing.add(s.base)
                        report.violations.append(Violation(
                            "face-face", str(s), f"d{i}d{j} = {lhs} but d{j - 1}d{i} = {rhs}"))
    for dim in range(0, top):
        for s in X.simplices(dim):
            for j in range(dim + 1):
                t = X.degeneracy(s, j)
                for i in range(dim + 2):
                    got = X.face(t, i)
                    if i < j:
                        want = X.degeneracy(X.face(s, i), j - 1) if dim else None
                    elif i in (j, j + 1):
                        want = s
                    else:
                        want = X.degeneracy(X.face(s, i - 1), j) if dim else None
                    if want is not None and got != want:
                        report.violations.append(Violation(
                            "face-degeneracy", str(s), f"d{i}s{j} = {got}, expected {want}"))
    return report


# --- maps -------------------------------------------------------------------

@dataclass(eq=False)
class SimplicialMap:
    """A map determined by the images of the source's nondegenerate simplices."""

    source: FiniteSimplicialSet
    target: FiniteSimplicialSet
    images: Mapping[str, Simplex]
    name: str = ""
    _memo: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.images = dict(self.images)
        for sid in self.source:
            if sid not in self.images:
                raise SimplicialError(f"no image for {sid!r}")
            img = self.images[sid]
            if img.base not in self.target:
                raise UnknownSimplexError(img.base)
            if img.dim != self.source.dims[sid]:
                raise DimensionError(f"image of {sid!r} has dimension {img.dim}")

    def __eq__(self, other):
        if not isinstance(other, SimplicialMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.images == other.images)

    __hash__ = object.__hash__

    def __call__(self, s: Simplex) -> Simplex:
        return evaluate_map(self, s)


def evaluate_map(f: SimplicialMap, s: Simplex) -> Simplex:
    if s.base not in f.images:
        raise UnknownSimplexError(s.base)
    out = f.images[s.base]
    for j in reversed(s.deg):
        out = f.target.degeneracy(out, j)
    return out


def validate_map(f: SimplicialMap) -> list[str]:
    """Failures of ``f(d_i x) = d_i f(x)`` over nondegenerate ``x``."""
    problems = []
    X, Y = f.source, f.target
    for sid, n in X.dims.items():
        for i in range(n + 1 if n else 0):
            lhs = evaluate_map(f, X.faces[sid][i])
            rhs = Y.face(f.images[sid], i)
            if lhs != rhs:
                problems.append(f"{sid}: f(d{i}) = {lhs} but d{i}f = {rhs}")
    return problems


def identity_map(X: FiniteSimplicialSet) -> SimplicialMap:
    return SimplicialMap(X, X, {s: X.simplex(s) for s in X}, name=f"id_{X.name}")


def compose(g: SimplicialMap, f: SimplicialMap) -> SimplicialMap:
    """``g . f``."""
    if f.target is not g.source and f.target != g.source:
        raise SimplicialError("maps are not composable")
    return SimplicialMap(f.source, g.target, {s: evaluate_map(g, img) for s, img in f.images.items()},
                         name=f"{g.name}.{f.name}")


def constant_map(X: FiniteSimplicialSet, Y: FiniteSimplicialSet, vertex: str) -> SimplicialMap:
    v = Y.simplex(vertex)
    if v.dim != 0:
        raise DimensionError(f"{vertex!r} is not a vertex")
    images = {}
    for sid, n in X.dims.items():
        img = v
        for _ in range(n):
            img = Y.degeneracy(img, 0)
        images[sid] = img
    return SimplicialMap(X, Y, images, name=f"const_{vertex}")


def simplex_inclusion(n: int, vertices: Sequence[int], target_n: int) -> SimplicialMap:
    """The map Delta^n -> Delta^target_n induced by a monotone map of ordinals."""
    if len(vertices) != n + 1 or any(b < a for a, b in zip(vertices, vertices[1:])):
        raise SimplicialError("vertex list must be monotone of length n + 1")
    src, tgt = standard_simplex(n), standard_simplex(target_n)
    sep = "" if target_n < 10 else "."
    images = {}
    for sid, k in src.dims.items():
        idx = [int(c) for c in (sid.split(".") if "." in sid else sid)]
        img_v = [vertices[i] for i in idx]
        distinct = sorted(set(img_v))
        base = tgt.simplex(sep.join(map(str, distinct)))
        deg = [j for j in range(k) if img_v[j] == img_v[j + 1]]
        images[sid] = tgt.make(base.base, sorted(deg, reverse=True))
    return SimplicialMap(src, tgt, images, name=f"Delta{list(vertices)}")


# --- products and coproducts -----------------------------------------------

def _pair_id(a: Simplex, b: Simplex) -> str:
    return f"({a},{b})"


def _split_common(X, Y, a: Simplex, b: Simplex):
    """Write the pair ``(a, b)`` as ``s_word`` of a nondegenerate pair."""
    word: list[int] = []
    while True:
        common = set(a.deg) & set(b.deg)
        if not common:
            return a, b, word
        j = max(common)
        a, b = X.face(a, j), Y.face(b, j)
        word.append(j)


def product_simplex(X: FiniteSimplicialSet, Y: FiniteSimplicialSet, a: Simplex, b: Simplex) -> Simplex:
    """Normal form in ``X x Y`` of the pair of equal-dimensional simplices ``(a, b)``."""
    if a.dim != b.dim:
        raise DimensionError("coordinates of a product simplex must have equal dimension")
    a0, b0, word = _split_common(X, Y, a, b)
    out = Simplex(_pair_id(a0, b0), (), a0.dim)
    for j in reversed(word):
        out = Simplex(out.base, insert_degeneracy(out.deg, j), out.dim + 1)
    return out


def product(X: FiniteSimplicialSet, Y: FiniteSimplicialSet) -> FiniteSimplicialSet:
    """``X x Y`` with nondegenerate simplices the pairs with disjoint degeneracy words."""
    dims: dict[str, int] = {}
    pairs: dict[str, tuple[Simplex, Simplex]] = {}
    for x, p in X.dims.items():
        for y, q in Y.dims.items():
            for n in range(max(p, q), p + q + 1):
                for wa in itertools.combinations(range(n), n - p):
                    rest = [i for i in range(n) if i not in wa]
                    for wb in itertools.combinations(rest, n - q):
                        a = Simplex(x, tuple(sorted(wa, reverse=True)), n)
                        b = Simplex(y, tuple(sorted(wb, reverse=True)), n)
                        pid = _pair_id(a, b)
                        dims[pid] = n
                        pairs[pid] = (a, b)
    order = sorted(dims, key=lambda s: (dims[s], X.index(pairs[s][0].base), pairs[s][0].deg,
                                        Y.index(pairs[s][1].base), pairs[s][1].deg))
    dims = {s: dims[s] for s in order}
    faces = {}
    for pid, n in dims.items():
        if n == 0:
            continue
        a, b = pairs[pid]
        faces[pid] = tuple(product_simplex(X, Y, X.face(a, i), Y.face(b, i)) for i in range(n + 1))
    out = FiniteSimplicialSet(dims, faces, name=f"{X.name}x{Y.name}")
    out._memo["pairs"] = pairs
    out._memo["factors"] = (X, Y)
    return out


def projection(P: FiniteSimplicialSet, k: int) -> SimplicialMap:
    """Projection of a set built by :func:`product` onto factor ``k`` (0 or 1)."""
    pairs = P._memo["pairs"]
    factor = P._memo["factors"][k]
    return SimplicialMap(P, factor, {s: pairs[s][k] for s in P}, name=f"pr{k + 1}")


def product_map(f: SimplicialMap, g: SimplicialMap,
                source: FiniteSimplicialSet | None = None,
                target: FiniteSimplicialSet | None = None) -> SimplicialMap:
    """``f x g`` between products built by :func:`product`."""
    source = source or product(f.source, g.source)
    target = target or product(f.target, g.target)
    pairs = source._memo["pairs"]
    images = {s: product_simplex(f.target, g.target, evaluate_map(f, a), evaluate_map(g, b))
              for s, (a, b) in pairs.items()}
    return SimplicialMap(source, target, images, name=f"{f.name}x{g.name}")


def disjoint_union(*sets: FiniteSimplicialSet, tags: Sequence[str] | None = None) -> FiniteSimplicialSet:
    """Tagged coproduct; ids become ``"<tag>.<id>"``."""
    tags = list(tags) if tags is not None else [str(k) for k in range(len(sets))]
    if len(tags) != len(sets):
        raise SimplicialError("one tag per summand")
    dims: dict[str, int] = {}
    faces: dict[str, tuple[Simplex, ...]] = {}
    for tag, X in zip(tags, sets):
        for sid, n in X.dims.items():
            dims[f"{tag}.{sid}"] = n
        for sid, fs in X.faces.items():
            faces[f"{tag}.{sid}"] = tuple(Simplex(f"{tag}.{f.base}", f.deg, f.dim) for f in fs)
    out = FiniteSimplicialSet(dims, faces, name="+".join(X.name for X in sets))
    out._memo["summands"] = (tuple(sets), tuple(tags))
    return out


def summand_inclusion(U: FiniteSimplicialSet, k: int) -> SimplicialMap:
    sets, tags = U._memo["summands"]
    X, tag = sets[k], tags[k]
    return SimplicialMap(X, U, {s: Simplex(f"{tag}.{s}", (), n) for s, n in X.dims.items()},
                         name=f"in{k}")


def copairing(U: FiniteSimplicialSet, maps: Sequence[SimplicialMap]) -> SimplicialMap:
    """The map out of a coproduct that restricts to ``maps[k]`` on summand ``k``."""
    sets, tags = U._memo["summands"]
    target = maps[0].target
    images = {}
    for X, tag, f in zip(sets, tags, maps):
        for sid in X:
            images[f"{tag}.{sid}"] = f.images[sid]
    return SimplicialMap(U, target, images, name="[" + ",".join(f.name for f in maps) + "]")
