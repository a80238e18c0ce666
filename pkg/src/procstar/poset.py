"""The poset of nondegenerate simplices and its doubled quiver."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .sset import FiniteSimplicialSet, SimplicialMap, evaluate_map


@dataclass(eq=False)
class NdPoset:
    """Nondegenerate simplices ordered by "is an iterated face of"."""

    elements: tuple[str, ...]
    dims: Mapping[str, int]
    less: frozenset[tuple[str, str]]
    _memo: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._index = {e: k for k, e in enumerate(self.elements)}

    def __eq__(self, other):
        if not isinstance(other, NdPoset):
            return NotImplemented
        return (set(self.elements) == set(other.elements) and dict(self.dims) == dict(other.dims)
                and self.less == other.less)

    __hash__ = object.__hash__

    def __len__(self):
        return len(self.elements)

    def index(self, e: str) -> int:
        return self._index[e]

    def lt(self, a: str, b: str) -> bool:
        return (a, b) in self.less

    def pairs(self) -> list[tuple[str, str]]:
        """Strict pairs sorted by (source position, target position)."""
        return sorted(self.less, key=lambda p: (self._index[p[0]], self._index[p[1]]))

    def covers(self) -> list[tuple[str, str]]:
        out = []
        for a, b in self.pairs():
            if not any((a, c) in self.less and (c, b) in self.less for c in self.elements):
                out.append((a, b))
        return out

    def above(self, a: str) -> list[str]:
        return [b for b in self.elements if (a, b) in self.less]


def nd_poset(X: FiniteSimplicialSet) -> NdPoset:
    if "poset" in X._memo:
        return X._memo["poset"]
    below: dict[str, set[str]] = {}
    for sid in sorted(X.dims, key=lambda s: X.dims[s]):
        acc: set[str] = set()
        for f in X.faces.get(sid, ()):
            acc.add(f.base)
            acc |= below[f.base]
        below[sid] = acc
    less = frozenset((a, b) for b, acc in below.items() for a in acc)
    out = NdPoset(tuple(X.dims), dict(X.dims), less)
    X._memo["poset"] = out
    return out


@dataclass(eq=False)
class PosetMap:
    source: NdPoset
    target: NdPoset
    images: Mapping[str, str]

    def preimage(self, b: str) -> list[str]:
        return [a for a in self.source.elements if self.images[a] == b]

    def preimage_sizes(self) -> dict[str, int]:
        out = {b: 0 for b in self.target.elements}
        for a in self.source.elements:
            out[self.images[a]] += 1
        return out

    def is_monotone(self) -> bool:
        for a, b in self.source.less:
            fa, fb = self.images[a], self.images[b]
            if fa != fb and (fa, fb) not in self.target.less:
                return False
        return True


def nd_functor(f: SimplicialMap) -> PosetMap:
    """The poset map ``sigma -> chi(f(sigma))``."""
    images = {s: evaluate_map(f, f.source.simplex(s)).base for s in f.source}
    return PosetMap(nd_poset(f.source), nd_poset(f.target), images)


def compose_poset_maps(g: PosetMap, f: PosetMap) -> PosetMap:
    return PosetMap(f.source, g.target, {a: g.images[b] for a, b in f.images.items()})


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(eq=False)
class DoubledQuiver:
    """Vertices of a poset, one arrow ``x`` per strict pair and a reversed ``x*`` for each."""

    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    hasse: bool = False

    def __post_init__(self):
        self._by_name: dict[str, Arrow] = {}
        for a in self.arrows:
            self._by_name[a.name] = a
            self._by_name[a.name + "*"] = Arrow(a.name + "*", a.target, a.source)
        self._by_ends = {(a.source, a.target): a.name for a in self.arrows}

    @property
    def letters(self) -> list[str]:
        """Arrow letters, unstarred first."""
        return [a.name for a in self.arrows] + [a.name + "*" for a in self.arrows]

    def arrow(self, letter: str) -> Arrow:
        return self._by_name[letter]

    def source(self, letter: str) -> str:
        return self._by_name[letter].source

    def target(self, letter: str) -> str:
        return self._by_name[letter].target

    @staticmethod
    def star(letter: str) -> str:
        return letter[:-1] if letter.endswith("*") else letter + "*"

    def between(self, s: str, t: str) -> str | None:
        return self._by_ends.get((s, t))

    def paths(self, k: int, starred: bool = False) -> Iterator[tuple[str, ...]]:
        """Oriented paths with ``k`` arrows; unstarred arrows only unless ``starred``."""
        letters = self.letters if starred else [a.name for a in self.arrows]
        out_of: dict[str, list[str]] = {}
        for x in letters:
            out_of.setdefault(self.source(x), []).append(x)

        def walk(path, at):
            if len(path) == k:
                yield tuple(path)
                return
            for x in out_of.get(at, ()):
                yield from walk(path + [x], self.target(x))

        if k == 0:
            return
        for x in letters:
            yield from walk([x], self.target(x))

    def has_cycle(self) -> bool:
        """Cycle among unstarred arrows."""
        succ: dict[str, list[str]] = {}
        for a in self.arrows:
            succ.setdefault(a.source, []).append(a.target)
        state: dict[str, int] = {}

        def visit(v):
            state[v] = 1
            for w in succ.get(v, ()):
                if state.get(w) == 1 or (w not in state and visit(w)):
                    return True
            state[v] = 2
            return False

        return any(v not in state and visit(v) for v in self.vertices)


def doubled_quiver(P: NdPoset, hasse: bool = False) -> DoubledQuiver:
    key = ("quiver", hasse)
    if key in P._memo:
        return P._memo[key]
    pairs = P.covers() if hasse else P.pairs()
    arrows = tuple(Arrow(f"x{k + 1}", a, b) for k, (a, b) in enumerate(pairs))
    out = DoubledQuiver(P.elements, arrows, hasse)
    P._memo[key] = out
    return out


def nerve_chains(P: NdPoset, k: int) -> list[tuple[str, ...]]:
    """Strict chains ``e_0 < ... < e_k``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    chains = [(e,) for e in P.elements]
    for _ in range(k):
        chains = [c + (b,) for c in chains for b in P.above(c[-1])]
    return chains
