"""Rewriting modulo a presentation: bounded completion, normal forms, word problem.

Rules have a word on the left and a polynomial of strictly smaller words
(degree-lexicographic, with vertices < arrows < reversed arrows) on the
right.  Completion adds the resolvents of overlaps, as in Knuth-Bendix for
monoids, but over integer polynomials so that the unit relation
``sum(v) = 1`` fits.  Overlaps longer than the bound are skipped and the
system is flagged incomplete.
"""
from __future__ import annotations

import enum
import heapq
import itertools
import sys
from dataclasses import dataclass, field

from .polynomial import StarPolynomial, Word
from .presentation import Presentation

DEFAULT_BOUND = 6


class Decision(str, enum.Enum):
    EQUAL = "equal"
    DISTINCT = "distinct"
    UNKNOWN = "unknown"


class CompletionError(RuntimeError):
    pass


@dataclass(eq=False)
class RewriteSystem:
    alphabet: tuple[str, ...]
    rules: dict[Word, StarPolynomial] = field(default_factory=dict)
    bound: int = DEFAULT_BOUND
    skipped: set[int] = field(default_factory=set)
    nonmonic: list[StarPolynomial] = field(default_factory=list)
    steps: int = 0

    def __post_init__(self):
        self.rank = {x: k for k, x in enumerate(self.alphabet)}
        self._memo: dict[Word, StarPolynomial] = {}
        self._lengths: list[int] = []
        self._refresh()

    @property
    def complete(self) -> bool:
        return not self.skipped and not self.nonmonic

    @property
    def complete_up_to(self) -> float:
        """Every overlap word up to this length has been resolved."""
        if self.nonmonic:
            return 0
        return min(self.skipped) - 1 if self.skipped else float("inf")

    def key(self, w: Word):
        rank = self.rank
        return (len(w), tuple(rank[x] for x in w))

    def leading(self, p: StarPolynomial) -> Word:
        return max(p.words(), key=self.key)

    def _refresh(self):
        self._memo.clear()
        self._length_count = {}
        for w in self.rules:
            self._length_count[len(w)] = self._length_count.get(len(w), 0) + 1
        self._lengths = sorted(self._length_count)

    def _set_rule(self, lhs: Word, rhs: StarPolynomial | None):
        """Insert (or with ``rhs=None`` delete) a rule, keeping the caches coherent."""
        counts = self._length_count
        if rhs is None:
            del self.rules[lhs]
            counts[len(lhs)] -= 1
            if not counts[len(lhs)]:
                del counts[len(lhs)]
        else:
            if lhs not in self.rules:
                counts[len(lhs)] = counts.get(len(lhs), 0) + 1
            self.rules[lhs] = rhs
        self._memo.clear()
        self._lengths = sorted(counts)

    def _redex(self, w: Word):
        rules = self.rules
        lengths = self._lengths
        for end in range(1, len(w) + 1):
            for L in lengths:
                if L > end:
                    break
                sub = w[end - L:end]
                if sub in rules:
                    return end - L, end, rules[sub]
        return None

    def nf_word(self, w: Word) -> StarPolynomial:
        hit = self._memo.get(w)
        if hit is not None:
            return hit
        red = self._redex(w)
        if red is None:
            out = StarPolynomial({w: 1})
        else:
            i, j, rhs = red
            self.steps += 1
            pre, post = w[:i], w[j:]
            acc: dict[Word, int] = {}
            for u, c in rhs.items():
                for v, d in self.nf_word(pre + u + post).items():
                    acc[v] = acc.get(v, 0) + c * d
            out = StarPolynomial(acc)
        self._memo[w] = out
        return out

    def normal_form(self, p: StarPolynomial) -> StarPolynomial:
        acc: dict[Word, int] = {}
        for w, c in p.items():
            for v, d in self.nf_word(w).items():
                acc[v] = acc.get(v, 0) + c * d
        return StarPolynomial(acc)

    def is_irreducible(self, w: Word) -> bool:
        return self._redex(w) is None

    def format_rules(self) -> list[str]:
        out = []
        for lhs in sorted(self.rules, key=self.key):
            out.append(f"{''.join(lhs) or '1'} -> {self.rules[lhs].format()}")
        return out


def _contains(w: Word, sub: Word) -> bool:
    n = len(sub)
    return any(w[i:i + n] == sub for i in range(len(w) - n + 1))


class _Completion:
    def __init__(self, rs: RewriteSystem):
        self.rs = rs
        self.prefix: dict[Word, set[Word]] = {}
        self.suffix: dict[Word, set[Word]] = {}
        self.by_letter: dict[str, set[Word]] = {}
        self.heap: list = []
        self.counter = itertools.count()

    def push(self, p: StarPolynomial):
        if p:
            heapq.heappush(self.heap, (self.rs.key(self.rs.leading(p)), next(self.counter), p))

    def _index(self, lhs: Word, add: bool):
        for k in range(1, len(lhs)):
            for table, part in ((self.prefix, lhs[:k]), (self.suffix, lhs[-k:])):
                bucket = table.setdefault(part, set())
                (bucket.add if add else bucket.discard)(lhs)
        for x in set(lhs):
            bucket = self.by_letter.setdefault(x, set())
            (bucket.add if add else bucket.discard)(lhs)

    def add_rule(self, lhs: Word, rhs: StarPolynomial):
        rs = self.rs
        victims = [w for w in self.by_letter.get(lhs[0], ()) if w != lhs and _contains(w, lhs)]
        for w in victims:
            old = rs.rules[w]
            rs._set_rule(w, None)
            self._index(w, add=False)
            self.push(StarPolynomial({w: 1}) - old)
        rs._set_rule(lhs, rhs)
        self._index(lhs, add=True)
        self._overlaps(lhs, rhs)

    def _critical(self, left: Word, right: Word, k: int):
        """Overlap of the last ``k`` letters of ``left`` with the first ``k`` of ``right``."""
        rs = self.rs
        word_len = len(left) + len(right) - k
        r1, r2 = rs.rules[left], rs.rules[right]
        if not r1 and not r2:
            return
        if word_len > rs.bound:
            rs.skipped.add(word_len)
            return
        tail = StarPolynomial({right[k:]: 1})
        head = StarPolynomial({left[:len(left) - k]: 1})
        self.push(r1 * tail - head * r2)

    def _overlaps(self, lhs: Word, rhs: StarPolynomial):
        for k in range(1, len(lhs)):
            for other in list(self.prefix.get(lhs[-k:], ())):
                if len(other) > k:
                    self._critical(lhs, other, k)
            for other in list(self.suffix.get(lhs[:k], ())):
                if len(other) > k and other != lhs:
                    self._critical(other, lhs, k)

    def run(self):
        rs = self.rs
        while self.heap:
            _, _, p = heapq.heappop(self.heap)
            p = rs.normal_form(p)
            if not p:
                continue
            lead = rs.leading(p)
            c = p.terms[lead]
            if c not in (1, -1):
                rs.nonmonic.append(p)
                continue
            rest = p - StarPolynomial({lead: c})
            self.add_rule(lead, rest * (-c))


def compile_system(P: Presentation, completion_bound: int = DEFAULT_BOUND) -> RewriteSystem:
    """Rules from the presentation's relations, completed on overlaps up to the bound."""
    key = ("rewrite", completion_bound)
    if key in P._memo:
        return P._memo[key]
    if not P.unital:
        raise CompletionError("only finite (unital) presentations can be compiled")
    rs = RewriteSystem(P.alphabet, bound=completion_bound)
    comp = _Completion(rs)
    for r in P.relations():
        if not r.is_trivial:
            comp.push(r.lhs - r.rhs)
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 10000))
    try:
        comp.run()
    finally:
        sys.setrecursionlimit(limit)
    P._memo[key] = rs
    return rs


def normal_form(rs: RewriteSystem, p: StarPolynomial) -> StarPolynomial:
    return rs.normal_form(p)


def decide_equal(rs: RewriteSystem, p: StarPolynomial, q: StarPolynomial) -> Decision:
    """Equal normal forms are always conclusive; distinct ones only for a complete system."""
    if rs.normal_form(p - q):
        return Decision.DISTINCT if rs.complete else Decision.UNKNOWN
    return Decision.EQUAL


def check_local_confluence(rs: RewriteSystem, max_len: int | None = None) -> list[tuple[Word, StarPolynomial]]:
    """Overlap words (up to ``max_len``) whose two one-step reducts have different normal forms."""
    max_len = rs.bound if max_len is None else max_len
    bad = []
    rules = list(rs.rules)
    for a in rules:
        for b in rules:
            for k in range(1, min(len(a), len(b))):
                if a[-k:] != b[:k] or len(a) + len(b) - k > max_len:
                    continue
                one = rs.rules[a] * StarPolynomial({b[k:]: 1})
                two = StarPolynomial({a[:len(a) - k]: 1}) * rs.rules[b]
                diff = rs.normal_form(one - two)
                if diff:
                    bad.append((a + b[k:], diff))
    return bad
