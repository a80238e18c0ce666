"""Brute-force congruence closure of a presentation on words of bounded length.

Independent of the rewriting engine: relation instances are applied as
literal two-sided substitutions.  Monomial instances (``w = w'`` or
``w = 0``) are merged with a union-find over all words up to ``max_len``;
the remaining linear instances, multiplied on both sides by every word
that keeps the total within ``max_len``, are row-reduced over the
rationals on top of the union-find classes.  Two polynomials are equal
within the bound iff their difference lies in that span.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

from .polynomial import StarPolynomial, Word
from .presentation import Presentation
from .subdivision import UnionFind

ZERO = ("<zero>",)


class BoundError(ValueError):
    pass


class Congruence:
    def __init__(self, P: Presentation, max_len: int):
        self.P = P
        self.max_len = max_len
        zero_words: set[Word] = set()
        equal: list[tuple[Word, Word]] = []
        linear: list[StarPolynomial] = []
        for r in P.relations():
            if r.is_trivial:
                continue
            lhs, rhs = r.lhs, r.rhs
            lw = _monomial(lhs)
            if lw is not None and not rhs:
                zero_words.add(lw)
            elif lw is not None and _monomial(rhs) is not None:
                equal.append((lw, _monomial(rhs)))
            else:
                linear.append(lhs - rhs)
        self.zero_words = zero_words
        self._zero_lengths = sorted({len(w) for w in zero_words})
        alphabet = P.alphabet

        # words without a zero factor, by length
        self.words: list[list[Word]] = [[()]]
        for n in range(1, max_len + 1):
            layer = [w + (x,) for w in self.words[-1] for x in alphabet]
            self.words.append([w for w in layer if not self._zero_suffix(w)])
        uf = UnionFind()
        uf.add(ZERO)
        for layer in self.words:
            for w in layer:
                uf.add(w)
        subst = equal + [(b, a) for a, b in equal]
        for layer in self.words:
            for w in layer:
                for a, b in subst:
                    k = len(a)
                    for i in range(len(w) - k + 1):
                        if w[i:i + k] == a:
                            v = w[:i] + b + w[i + k:]
                            if len(v) > max_len:
                                continue
                            uf.union(w, ZERO if self.has_zero_factor(v) else v)
        self.uf = uf
        self.zero_root = uf.find(ZERO)
        self._col: dict = {}
        self.pivots: dict[int, dict[int, Fraction]] = {}
        for rel in linear:
            span = rel.max_length()
            for total in range(0, max_len - span + 1):
                for i in range(total + 1):
                    for u in self.words[i]:
                        for v in self.words[total - i]:
                            self._insert(self.vector(StarPolynomial({u: 1}) * rel * StarPolynomial({v: 1})))

    def _zero_suffix(self, w: Word) -> bool:
        for L in self._zero_lengths:
            if len(w) >= L and w[-L:] in self.zero_words:
                return True
        return False

    def has_zero_factor(self, w: Word) -> bool:
        for L in self._zero_lengths:
            for i in range(len(w) - L + 1):
                if w[i:i + L] in self.zero_words:
                    return True
        return False

    def _class(self, w: Word):
        if len(w) > self.max_len:
            raise BoundError(f"word of length {len(w)} exceeds bound {self.max_len}")
        if self.has_zero_factor(w):
            return None
        root = self.uf.find(w)
        return None if root == self.zero_root else root

    def vector(self, p: StarPolynomial) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for w, c in p.items():
            root = self._class(w)
            if root is None:
                continue
            col = self._col.setdefault(root, len(self._col))
            out[col] = out.get(col, 0) + Fraction(c)
        return {k: v for k, v in out.items() if v}

    def reduce(self, vec: dict[int, Fraction]) -> dict[int, Fraction]:
        vec = dict(vec)
        while True:
            hits = [c for c in vec if c in self.pivots]
            if not hits:
                return vec
            col = max(hits)
            factor = vec[col]
            for k, v in self.pivots[col].items():
                nv = vec.get(k, 0) - factor * v
                if nv:
                    vec[k] = nv
                else:
                    vec.pop(k, None)

    def _insert(self, vec):
        vec = self.reduce(vec)
        if not vec:
            return
        col = max(vec)
        lead = vec[col]
        self.pivots[col] = {k: v / lead for k, v in vec.items()}

    def canonical(self, p: StarPolynomial) -> frozenset:
        """A representative of ``p`` modulo the bounded congruence."""
        return frozenset(self.reduce(self.vector(p)).items())

    def equal(self, p: StarPolynomial, q: StarPolynomial) -> bool:
        return not self.reduce(self.vector(p - q))


def _monomial(p: StarPolynomial) -> Word | None:
    if len(p) == 1:
        (w, c), = p.items()
        if c == 1:
            return w
    return None


def congruence(P: Presentation, max_len: int) -> Congruence:
    key = ("congruence", max_len)
    if key not in P._memo:
        P._memo[key] = Congruence(P, max_len)
    return P._memo[key]


def brute_force_equal(P: Presentation, p: StarPolynomial, q: StarPolynomial, max_len: int) -> bool:
    if max(p.max_length(), q.max_length()) > max_len:
        raise BoundError("bound too small for the inputs")
    return congruence(P, max_len).equal(p, q)


def all_words(alphabet, max_len: int):
    for n in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=n)
