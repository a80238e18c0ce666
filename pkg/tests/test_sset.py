import itertools
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from procstar.sset import (DimensionError, FiniteSimplicialSet, Simplex, SimplicialError,
                           UnknownSimplexError, compose, constant_map, copairing, disjoint_union,
                           empty_set, evaluate_map, face, identity_map, minimal_circle, normalize,
                           product, projection, simplex_inclusion, standard_simplex, summand_inclusion,
                           validate, validate_map)
from procstar.corpus import all_maps, composable_pairs


def monotone_injections(m, n):
    """Strictly increasing maps [m] -> [n], by brute force over all maps."""
    return [f for f in itertools.product(range(n + 1), repeat=m + 1)
            if all(a < b for a, b in zip(f, f[1:]))]


@pytest.mark.parametrize("n", range(5))
def test_standard_simplex_counts_match_monotone_injections(n):
    X = standard_simplex(n)
    assert X.counts() == [len(monotone_injections(k, n)) for k in range(n + 1)]
    assert X.counts() == [comb(n + 1, k + 1) for k in range(n + 1)]
    assert validate(X).ok


def test_small_simplices():
    assert len(standard_simplex(0)) == 1
    assert standard_simplex(1).counts() == [2, 1]
    assert standard_simplex(2).counts() == [3, 3, 1]


# Delta^n simplices of dimension m are weakly increasing vertex sequences;
# operators act by deleting (d_i) or repeating (s_j) an entry.

def vertex_sequence(X, s: Simplex):
    seq = [int(c) for c in s.base]
    for j in reversed(s.deg):
        seq.insert(j, seq[j])
    return tuple(seq)


def act(seq, op):
    kind, i = op
    seq = list(seq)
    if kind == "d":
        del seq[i]
    else:
        seq.insert(i, seq[i])
    return tuple(seq)


operator_words = st.lists(st.tuples(st.sampled_from("ds"), st.integers(0, 4)), max_size=4)


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(["0", "1", "2", "01", "02", "12", "012"]), operator_words)
def test_normal_form_matches_vertex_sequences(base, word):
    X = standard_simplex(2)
    seq = vertex_sequence(X, X.simplex(base))
    ops = []
    for kind, i in word:
        dim = len(seq) - 1
        if kind == "d" and (dim == 0 or i > dim):
            continue
        if kind == "s" and i > dim:
            continue
        ops.append(f"{kind}{i}")
        seq = act(seq, (kind, i))
    s = normalize(X, base, list(reversed(ops)))
    assert vertex_sequence(X, s) == seq
    assert s.dim == len(seq) - 1
    assert list(s.deg) == sorted(set(s.deg), reverse=True)
    assert normalize(X, s.base, []).base == s.base


def test_normal_form_uniqueness_exhaustive():
    X = standard_simplex(2)
    seen = {}
    ops = [f"{k}{i}" for k in "ds" for i in range(4)]
    for base in X:
        for length in range(4):
            for word in itertools.product(ops, repeat=length):
                try:
                    s = normalize(X, base, list(word))
                except DimensionError:
                    continue
                seq = vertex_sequence(X, s)
                assert seen.setdefault(seq, s) == s


def test_normalize_examples():
    X = standard_simplex(0)
    assert normalize(X, "0", []) == Simplex("0", (), 0)
    assert normalize(X, "0", ["s0", "s0"]).deg == (1, 0)
    Y = standard_simplex(1)
    assert normalize(Y, "01", ["d0", "s0"]) == Y.simplex("01")
    with pytest.raises(DimensionError):
        normalize(Y, "0", ["d0"])
    with pytest.raises(DimensionError):
        normalize(Y, "01", ["s3"])


def test_face_examples():
    D1 = standard_simplex(1)
    assert face(D1, D1.simplex("01"), 0) == D1.simplex("1")
    assert face(D1, D1.simplex("01"), 1) == D1.simplex("0")
    D0 = standard_simplex(0)
    assert face(D0, D0.make("0", [0]), 0) == D0.simplex("0")
    with pytest.raises(DimensionError):
        face(D1, D1.simplex("01"), 2)


def test_simplicial_identity_on_faces_of_triangle():
    X = standard_simplex(2)
    t = X.simplex("012")
    for i, j in itertools.combinations(range(3), 2):
        assert face(X, face(X, t, j), i) == face(X, face(X, t, i), j - 1)


def test_circle_validates():
    C = minimal_circle()
    assert C.counts() == [1, 1]
    assert validate(C).ok


def test_broken_face_table_reported():
    dims = {"0": 0, "1": 0, "2": 0, "01": 1, "02": 1, "12": 1, "012": 2}
    faces = dict(standard_simplex(2).faces)
    v = lambda s: Simplex(s, (), len(s) - 1)
    faces["012"] = (v("12"), v("01"), v("01"))  # d0d0 = 2 but d0d1 = 1
    report = validate(FiniteSimplicialSet(dims, faces))
    assert len(report) == 1
    assert report.violations[0].simplex == "012"
    assert "d0d1" in report.violations[0].detail


def test_constructor_errors():
    with pytest.raises(SimplicialError):
        FiniteSimplicialSet({"e": 1}, {})
    with pytest.raises(UnknownSimplexError):
        standard_simplex(1).simplex("2")


def disjoint_word_count(p, q):
    """Nondegenerate simplices of Delta^p x Delta^q: pairs with disjoint degeneracy sets."""
    total = []
    for n in range(p + q + 1):
        count = 0
        for a in itertools.product(range(p + 1), repeat=n + 1):
            for b in itertools.product(range(q + 1), repeat=n + 1):
                if list(a) != sorted(a) or list(b) != sorted(b):
                    continue
                if all((a[k], b[k]) != (a[k + 1], b[k + 1]) for k in range(n)):
                    count += 1
        total.append(count)
    return total


@pytest.mark.parametrize("p,q", [(1, 1), (1, 2), (2, 1), (0, 2)])
def test_product_of_simplices_matches_oracle(p, q):
    P = product(standard_simplex(p), standard_simplex(q))
    assert P.counts() == disjoint_word_count(p, q)
    assert validate(P).ok


def test_product_examples():
    P = product(standard_simplex(1), standard_simplex(1))
    assert P.counts() == [4, 5, 2] and len(P) == 11
    assert product(standard_simplex(1), standard_simplex(0)).counts() == [2, 1]
    C = minimal_circle()
    assert product(standard_simplex(0), C).counts() == C.counts()
    X, Y = minimal_circle(), standard_simplex(1)
    assert product(X, Y).counts() == product(Y, X).counts()
    assert validate(product(X, Y)).ok


def test_projections_are_simplicial():
    P = product(standard_simplex(1), minimal_circle())
    for k in (0, 1):
        assert validate_map(projection(P, k)) == []


def test_disjoint_union():
    D0 = standard_simplex(0)
    U = disjoint_union(D0, D0)
    assert U.counts() == [2]
    assert not U.faces
    X = standard_simplex(2)
    assert disjoint_union(X, empty_set()).counts() == X.counts()
    Y = minimal_circle()
    assert len(disjoint_union(X, Y)) == len(X) + len(Y)
    assert validate(disjoint_union(X, Y)).ok


def test_evaluate_map_examples():
    D1, D0 = standard_simplex(1), standard_simplex(0)
    ident = identity_map(D1)
    for s in D1.simplices(2):
        assert evaluate_map(ident, s) == s
    collapse = constant_map(D1, D0, "0")
    assert evaluate_map(collapse, D1.simplex("01")) == Simplex("0", (0,), 1)
    U = disjoint_union(D0, D0)
    fold = copairing(U, [identity_map(D0), identity_map(D0)])
    assert {evaluate_map(fold, U.simplex(s)).base for s in U} == {"0"}
    with pytest.raises(UnknownSimplexError):
        evaluate_map(collapse, Simplex("2", (), 0))


def test_simplex_inclusion_and_summands_are_simplicial():
    assert validate_map(simplex_inclusion(1, [0, 2], 2)) == []
    assert validate_map(simplex_inclusion(2, [0, 0, 1], 1)) == []
    U = disjoint_union(standard_simplex(1), minimal_circle())
    assert validate_map(summand_inclusion(U, 1)) == []


def test_corpus_maps_are_simplicial():
    for name, f in all_maps().items():
        assert validate_map(f) == [], name


def test_composition_functor_law():
    for (_, f), (_, g) in composable_pairs():
        gf = compose(g, f)
        for n in range(3):
            for s in f.source.simplices(n):
                assert evaluate_map(gf, s) == evaluate_map(g, evaluate_map(f, s))


def test_map_dimension_check():
    D1, D0 = standard_simplex(1), standard_simplex(0)
    with pytest.raises(DimensionError):
        from procstar.sset import SimplicialMap
        SimplicialMap(D1, D0, {"0": D0.simplex("0"), "1": D0.simplex("0"), "01": D0.simplex("0")})
