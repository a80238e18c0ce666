import pytest
from hypothesis import given, strategies as st

from procstar.polynomial import ExpressionError, StarPolynomial, parse_expression
from procstar.presentation import present
from procstar.sset import standard_simplex

W = StarPolynomial.word
ALPHABET = ["a", "b", "x1", "x2", "x1*", "x2*"]
star = lambda x: x[:-1] if x.endswith("*") else (x + "*" if x.startswith("x") else x)

polys = st.dictionaries(st.lists(st.sampled_from(ALPHABET), max_size=3).map(tuple),
                        st.integers(-3, 3), max_size=4).map(StarPolynomial)


def test_arithmetic():
    p = W("a") + W("b") * 2
    assert p - p == StarPolynomial.zero()
    assert not (p - p)
    assert p * StarPolynomial.one() == p
    assert (W("a") + 1) * (W("a") - 1) == W("a", "a") - 1
    assert 3 * W("a") == W("a") * 3 == W("a") + W("a") + W("a")
    assert StarPolynomial.sum_of("ab") == W("a") + W("b")
    assert StarPolynomial.one() == 1


@given(polys, polys, polys)
def test_ring_laws(p, q, r):
    assert p + q == q + p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r


@given(polys, polys)
def test_adjoint_is_an_antimultiplicative_involution(p, q):
    assert p.adjoint(star).adjoint(star) == p
    assert (p * q).adjoint(star) == q.adjoint(star) * p.adjoint(star)
    assert (p + q).adjoint(star) == p.adjoint(star) + q.adjoint(star)


@given(polys)
def test_json_round_trip(p):
    assert StarPolynomial.from_json(p.to_json()) == p


def test_substitute():
    p = W("a", "b") + 2
    images = {"a": W("x1") + W("x2"), "b": W("x1*")}
    assert p.substitute(images.__getitem__) == W("x1", "x1*") + W("x2", "x1*") + 2


def test_format():
    assert StarPolynomial.zero().format() == "0"
    assert (W("x1", "x2") - 1).format() == "-1 + x1x2"
    assert (2 * W("a")).format() == "2a"


def test_parser_examples():
    P = present(standard_simplex(1))
    A = P.alphabet
    assert parse_expression("x1*x1", A) == W("x1*", "x1")
    assert parse_expression("x1x2*", A) == W("x1", "x2*")
    assert parse_expression("a + b + c + d + e", A) == P.unit_sum()
    assert parse_expression("2 x1 . x1* - 1", A) == 2 * W("x1", "x1*") - 1
    assert parse_expression("-a", A) == -W("a")
    assert parse_expression("1", A) == StarPolynomial.one()


@pytest.mark.parametrize("bad", ["", "x9", "a +", "(a)", "a 2"])
def test_parser_errors(bad):
    with pytest.raises(ExpressionError):
        parse_expression(bad, present(standard_simplex(1)).alphabet)
