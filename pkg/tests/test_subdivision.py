import itertools

import pytest

from procstar.corpus import all_maps, composable_pairs, spaces
from procstar.sset import (FiniteSimplicialSet, SimplicialError, Simplex, compose, identity_map,
                           minimal_circle, simplex_inclusion, standard_simplex, validate, validate_map)
from procstar.subdivision import (UnionFind, canonical, is_regular, strict_chains, subdivide,
                                  subdivide_map)


def chain_oracle(n):
    """Strict chains of nonempty subsets of [n], counted by length, via bitmasks."""
    masks = range(1, 2 ** (n + 1))
    counts = {}

    def grow(last, length):
        counts[length] = counts.get(length, 0) + 1
        for m in masks:
            if m != last and m & last == last:
                grow(m, length + 1)

    for m in masks:
        grow(m, 1)
    return [counts.get(k, 0) for k in range(1, n + 2)]


@pytest.mark.parametrize("n", range(4))
def test_subdivided_simplex_matches_chain_oracle(n):
    sd = subdivide(standard_simplex(n)).sd
    assert sd.counts() == chain_oracle(n)
    assert len(strict_chains(n)) == sum(chain_oracle(n))


def test_subdivision_examples():
    sd1 = subdivide(standard_simplex(1)).sd
    assert sd1.counts() == [3, 2]
    assert set(sd1) == {"0[0]", "1[0]", "01[01]", "01[0<01]", "01[1<01]"}
    assert sd1.faces["01[0<01]"] == (Simplex("01[01]", (), 0), Simplex("0[0]", (), 0))
    sd2 = subdivide(standard_simplex(2)).sd
    assert sd2.counts() == [7, 12, 6] and len(sd2) == 25


def test_subdivided_circle():
    res = subdivide(minimal_circle())
    assert res.sd.counts() == [2, 2]
    # the single vertex absorbs both ends of the edge
    assert res.provenance["v[0]"] == [("e", ((0,),)), ("e", ((1,),)), ("v", ((0,),))]
    f0, f1 = res.sd.faces["e[0<01]"], res.sd.faces["e[1<01]"]
    assert f0 == f1 == (Simplex("e[01]", (), 0), Simplex("v[0]", (), 0))


@pytest.mark.parametrize("name", list(spaces()))
def test_subdivision_is_valid_and_keeps_dimension(name):
    X = spaces()[name]
    res = subdivide(X)
    assert validate(res.sd).ok
    assert res.sd.max_dim == X.max_dim
    assert set(res.provenance) == set(res.sd)


@pytest.mark.parametrize("name", list(spaces()))
def test_canonical_agrees_with_union_find(name):
    X = spaces()[name]
    res = subdivide(X)
    for cls, members in res.provenance.items():
        for sid, chain in members:
            assert res.simplex_of(X.simplex(sid), chain) == Simplex(cls, (), len(chain) - 1)


def test_canonical_degenerate_chain():
    X = standard_simplex(1)
    tau, strict, word = canonical(X, X.simplex("01"), ((0,), (0,), (0, 1)))
    assert (tau, strict, word) == ("01", ((0,), (0, 1)), (0,))
    # a chain of subsets of a degenerate simplex lands on its nondegenerate part
    s = X.make("0", [0])
    assert canonical(X, s, ((0,), (0, 1)))[:2] == ("0", ((0,),))


def test_union_find():
    uf = UnionFind()
    for x in range(6):
        uf.add(x)
    uf.union(0, 1)
    uf.union(2, 3)
    uf.union(1, 3)
    assert uf.find(0) == uf.find(2)
    assert uf.find(4) != uf.find(5)
    assert sorted(map(sorted, uf.groups().values())) == [[0, 1, 2, 3], [4], [5]]


def test_subdivide_rejects_invalid_input():
    dims = {"0": 0, "1": 0, "2": 0, "01": 1, "02": 1, "12": 1, "012": 2}
    faces = dict(standard_simplex(2).faces)
    v = lambda s: Simplex(s, (), len(s) - 1)
    faces["012"] = (v("12"), v("01"), v("01"))
    with pytest.raises(SimplicialError):
        subdivide(FiniteSimplicialSet(dims, faces))


def test_subdivide_map_examples():
    D1 = standard_simplex(1)
    ident = subdivide_map(identity_map(D1))
    assert all(ident.images[s] == ident.target.simplex(s) for s in ident.source)
    f = simplex_inclusion(0, [0], 1)
    sdf = subdivide_map(f)
    assert sdf.images["0[0]"] == Simplex("0[0]", (), 0)
    g = simplex_inclusion(0, [1], 1)
    assert subdivide_map(g).images["0[0]"] == Simplex("1[0]", (), 0)


@pytest.mark.parametrize("name", list(all_maps()))
def test_subdivide_map_identity_and_validity(name):
    f = all_maps()[name]
    assert validate_map(subdivide_map(f)) == []
    X = f.source
    sid = subdivide_map(identity_map(X))
    assert all(sid.images[s] == sid.target.simplex(s) for s in sid.source)


def test_subdivide_map_functorial():
    for (_, f), (_, g) in composable_pairs():
        lhs = subdivide_map(compose(g, f))
        rhs = compose(subdivide_map(g), subdivide_map(f))
        assert lhs.images == rhs.images


def test_regularity():
    assert not is_regular(minimal_circle()).regular
    assert is_regular(subdivide(minimal_circle()).sd).regular
    for n in range(4):
        assert is_regular(standard_simplex(n)).regular
    for X in spaces().values():
        assert is_regular(subdivide(X).sd).regular


def test_strict_chains_are_strict():
    for chain in strict_chains(2):
        for a, b in itertools.pairwise(chain):
            assert set(a) < set(b)
