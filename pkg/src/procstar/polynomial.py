"""Integer combinations of words over a *-alphabet, and a small expression parser."""
from __future__ import annotations

import re
from typing import Callable, Iterable, Mapping

Word = tuple[str, ...]


class StarPolynomial:
    """Finite map from words to nonzero integers; the empty word is the unit."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Word, int] | Iterable[tuple[Word, int]] = ()):
        items = terms.items() if isinstance(terms, (dict, Mapping)) else terms
        acc: dict[Word, int] = {}
        for w, c in items:
            w = tuple(w)
            acc[w] = acc.get(w, 0) + int(c)
        self._terms = {w: c for w, c in acc.items() if c}
        self._hash = None

    @classmethod
    def word(cls, *letters: str, coef: int = 1) -> "StarPolynomial":
        return cls({tuple(letters): coef})

    @classmethod
    def one(cls) -> "StarPolynomial":
        return cls({(): 1})

    @classmethod
    def zero(cls) -> "StarPolynomial":
        return cls()

    @classmethod
    def sum_of(cls, letters: Iterable[str]) -> "StarPolynomial":
        return cls([((x,), 1) for x in letters])

    @property
    def terms(self) -> dict[Word, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def words(self):
        return self._terms.keys()

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = StarPolynomial({(): other})
        if not isinstance(other, StarPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other):
        if isinstance(other, int):
            other = StarPolynomial({(): other})
        acc = dict(self._terms)
        for w, c in other._terms.items():
            acc[w] = acc.get(w, 0) + c
        return StarPolynomial(acc)

    __radd__ = __add__

    def __neg__(self):
        return StarPolynomial({w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = StarPolynomial({(): other})
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return StarPolynomial({w: c * other for w, c in self._terms.items()})
        acc: dict[Word, int] = {}
        for u, a in self._terms.items():
            for v, b in other._terms.items():
                w = u + v
                acc[w] = acc.get(w, 0) + a * b
        return StarPolynomial(acc)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def max_length(self) -> int:
        return max((len(w) for w in self._terms), default=0)

    def adjoint(self, star: Callable[[str], str]) -> "StarPolynomial":
        """Reverse each word and star each letter; integer coefficients are real."""
        return StarPolynomial({tuple(star(x) for x in reversed(w)): c for w, c in self._terms.items()})

    def substitute(self, images: Callable[[str], "StarPolynomial"]) -> "StarPolynomial":
        """Extend a letter assignment multiplicatively and linearly."""
        acc = StarPolynomial()
        for w, c in self._terms.items():
            term = StarPolynomial.one() * c
            for x in w:
                term = term * images(x)
                if not term:
                    break
            acc = acc + term
        return acc

    def sorted_terms(self, key=None) -> list[tuple[Word, int]]:
        key = key or (lambda w: (len(w), w))
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def format(self, key=None, sep: str = "") -> str:
        if not self._terms:
            return "0"
        parts = []
        for k, (w, c) in enumerate(self.sorted_terms(key)[::-1]):
            word = sep.join(w) if w else ""
            mag = abs(c)
            if not word:
                body = str(mag)
            elif mag == 1:
                body = word
            else:
                body = f"{mag}{sep}{word}"
            if k == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"StarPolynomial({self.format(sep='.')})"

    def to_json(self) -> list:
        return [[c, list(w)] for w, c in sorted(self._terms.items(), key=lambda t: (len(t[0]), t[0]))]

    @classmethod
    def from_json(cls, data) -> "StarPolynomial":
        return cls([(tuple(w), c) for c, w in data])


class ExpressionError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<op>[+\-.()])|(?P<ident>[A-Za-z_][A-Za-z0-9_\[\]<]*\*?))")


def parse_expression(text: str, alphabet: Iterable[str]) -> StarPolynomial:
    """Parse sums of products of letters.

    Juxtaposed identifiers are split by longest match against ``alphabet``;
    ``.`` or whitespace may also separate factors, a leading integer is a
    coefficient, ``*`` marks an adjoint and ``1`` is the unit.
    """
    letters = sorted(set(alphabet), key=len, reverse=True)
    pos = 0
    text = text.strip()
    if not text:
        raise ExpressionError("empty expression")

    def split_ident(chunk: str) -> list[str]:
        out = []
        i = 0
        while i < len(chunk):
            for x in letters:
                if chunk.startswith(x, i):
                    out.append(x)
                    i += len(x)
                    break
            else:
                raise ExpressionError(f"unknown generator at {chunk[i:]!r}")
        return out

    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ExpressionError(f"cannot parse {text[pos:]!r}")
        pos = m.end()
        if m.group("num"):
            tokens.append(("num", int(m.group("num"))))
        elif m.group("op"):
            tokens.append(("op", m.group("op")))
        else:
            for x in split_ident(m.group("ident")):
                tokens.append(("id", x))

    result = StarPolynomial()
    sign, coef, word, seen = 1, None, [], False

    def flush():
        nonlocal result
        if not seen:
            raise ExpressionError("dangling operator")
        c = 1 if coef is None else coef
        result = result + StarPolynomial({tuple(word): sign * c})

    for kind, val in tokens:
        if kind == "op" and val in "+-":
            if seen or word or coef is not None:
                flush()
            elif val == "-":
                sign = -sign
                continue
            sign, coef, word, seen = (1 if val == "+" else -1), None, [], False
        elif kind == "op" and val == ".":
            continue
        elif kind == "op":
            raise ExpressionError("parentheses are not supported")
        elif kind == "num":
            if word:
                if val != 1:
                    raise ExpressionError("coefficients must precede the word")
            elif coef is None:
                coef = val
            else:
                coef *= val
            seen = True
        else:
            word.append(val)
            seen = True
    flush()
    return result
