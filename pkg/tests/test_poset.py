import itertools

import pytest
from hypothesis import given, settings, strategies as st

from procstar.corpus import all_maps, composable_pairs, spaces
from procstar.poset import (compose_poset_maps, doubled_quiver, nd_functor, nd_poset, nerve_chains)
from procstar.sset import compose, identity_map, standard_simplex
from procstar.subdivision import subdivide


def face_closure_pairs(X):
    """Strict pairs by brute force: every iterated face of a nondegenerate simplex."""
    pairs = set()
    for sid in X:
        frontier = [X.simplex(sid)]
        seen = set()
        while frontier:
            s = frontier.pop()
            for i in range(s.dim + 1) if s.dim else ():
                f = X.face(s, i)
                if f.base not in seen:
                    seen.add(f.base)
                    frontier.append(X.simplex(f.base))
        pairs |= {(a, sid) for a in seen}
    return pairs


def test_sd_delta1_poset_matches_figure():
    P = nd_poset(subdivide(standard_simplex(1)).sd)
    assert len(P) == 5
    assert set(P.pairs()) == {("0[0]", "01[0<01]"), ("01[01]", "01[0<01]"),
                              ("01[01]", "01[1<01]"), ("1[0]", "01[1<01]")}


def test_delta2_poset():
    P = nd_poset(standard_simplex(2))
    assert len(P) == 7 and len(P.pairs()) == 12
    by_dims = {}
    for a, b in P.pairs():
        key = (P.dims[a], P.dims[b])
        by_dims[key] = by_dims.get(key, 0) + 1
    assert by_dims == {(0, 1): 6, (0, 2): 3, (1, 2): 3}
    P0 = nd_poset(standard_simplex(0))
    assert len(P0) == 1 and P0.pairs() == []


@pytest.mark.parametrize("name", list(spaces()))
def test_poset_is_strict_order_matching_face_closure(name):
    X = subdivide(spaces()[name]).sd
    P = nd_poset(X)
    assert P.less == face_closure_pairs(X)
    for a, b in P.less:
        assert a != b and P.dims[a] < P.dims[b]
    for (a, b), (c, d) in itertools.product(P.less, repeat=2):
        if b == c:
            assert (a, d) in P.less


def test_nd_functor_examples():
    maps = all_maps()
    f = maps["id_Delta2"]
    assert all(a == b for a, b in nd_functor(f).images.items())
    col = nd_functor(maps["collapse_Delta1"])
    assert set(col.images.values()) == {"0"} and len(col.images) == 3
    fold = nd_functor(maps["fold"])
    assert fold.preimage_sizes() == {"0": 2}


@pytest.mark.parametrize("name", list(all_maps()))
def test_nd_functor_monotone_and_dimension_nonincreasing(name):
    f = all_maps()[name]
    g = nd_functor(f)
    assert g.is_monotone()
    for a, b in g.images.items():
        assert g.target.dims[b] <= g.source.dims[a]


def test_nd_functor_composition():
    for (_, f), (_, g) in composable_pairs():
        assert nd_functor(compose(g, f)).images == compose_poset_maps(nd_functor(g), nd_functor(f)).images


def test_doubled_quiver_examples():
    Q = doubled_quiver(nd_poset(subdivide(standard_simplex(1)).sd))
    assert [a.name for a in Q.arrows] == ["x1", "x2", "x3", "x4"]
    assert Q.letters[4:] == ["x1*", "x2*", "x3*", "x4*"]
    for x in Q.letters:
        assert Q.source(Q.star(x)) == Q.target(x)
        assert Q.star(Q.star(x)) == x and Q.star(x) != x
    assert doubled_quiver(nd_poset(standard_simplex(0))).arrows == ()
    Q2 = doubled_quiver(nd_poset(standard_simplex(2)))
    assert len(Q2.arrows) == 12 and len(Q2.letters) == 24
    assert len(list(Q2.paths(2))) == len(nerve_chains(nd_poset(standard_simplex(2)), 2)) == 6
    assert not Q2.has_cycle()


def test_hasse_variant_keeps_only_covers():
    P = nd_poset(standard_simplex(2))
    H = doubled_quiver(P, hasse=True)
    assert len(H.arrows) == 9
    assert doubled_quiver(P) is not H


def test_nerve_chains_examples():
    P = nd_poset(subdivide(standard_simplex(1)).sd)
    assert len(nerve_chains(P, 1)) == 4
    assert nerve_chains(P, 2) == []
    assert [c[0] for c in nerve_chains(P, 0)] == list(P.elements)
    with pytest.raises(ValueError):
        nerve_chains(P, -1)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(list(spaces())), st.integers(1, 3))
def test_paths_biject_with_chains(name, k):
    P = nd_poset(subdivide(spaces()[name]).sd)
    Q = doubled_quiver(P)
    as_chains = sorted((Q.source(p[0]),) + tuple(Q.target(x) for x in p) for p in Q.paths(k))
    assert as_chains == sorted(nerve_chains(P, k))
    assert len(set(as_chains)) == len(as_chains)


def test_identity_poset_map():
    X = spaces()["S1"]
    assert nd_functor(identity_map(X)).images == {s: s for s in X}
