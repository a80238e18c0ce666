import pytest

from procstar.corpus import all_maps, maps
from procstar.functor import Status, genmaps_equal, induced_hom, is_proper
from procstar.homotopy import (OMEGA, EtaCertificate, HomotopyDiagram, constant_homotopy, cylinder,
                               diagram, eta_endpoints, operator_map, rotate, verify_homotopy)
from procstar.polynomial import StarPolynomial
from procstar.rewrite import Decision
from procstar.sset import (SimplicialError, SimplicialMap, constant_map, evaluate_map, identity_map,
                           projection, standard_simplex, validate, validate_map)

W = StarPolynomial.word


def simplex_from_sequence(X, seq):
    """The simplex of a standard simplex with a weakly increasing vertex sequence."""
    base = "".join(str(v) for v in sorted(set(seq)))
    deg = tuple(sorted((j for j in range(len(seq) - 1) if seq[j] == seq[j + 1]), reverse=True))
    return X.make(base, list(deg))


def sequence(s):
    seq = [int(c) for c in s.base]
    for j in reversed(s.deg):
        seq.insert(j, seq[j])
    return seq


def meet_homotopy():
    """gamma(t, x) = min(t, x): from the identity (t = 1) to the constant map at 0 (t = 0)."""
    D1 = standard_simplex(1)
    cyl = cylinder(D1)
    images = {}
    for sid in cyl.space:
        s = cyl.space.simplex(sid)
        t = sequence(evaluate_map(projection(cyl.space, 0), s))
        x = sequence(evaluate_map(projection(cyl.space, 1), s))
        images[sid] = simplex_from_sequence(D1, [min(a, b) for a, b in zip(t, x)])
    gamma = SimplicialMap(cyl.space, D1, images, name="meet")
    return identity_map(D1), constant_map(D1, D1, "0"), gamma


def test_cylinder_examples():
    c0 = cylinder(standard_simplex(0))
    assert c0.space.counts() == [2, 1]
    assert {s.base for s in c0.d0.images.values()} | {s.base for s in c0.d1.images.values()} == {"(0,0)", "(1,0)"}
    D1 = standard_simplex(1)
    c1 = cylinder(D1)
    assert len(c1.space) == 11 and validate(c1.space).ok
    for inc in (c1.d0, c1.d1):
        assert validate_map(inc) == []
        bases = [s.base for s in inc.images.values()]
        assert len(set(bases)) == len(bases)
        assert all(not s.deg for s in inc.images.values())
        assert is_proper(inc).proper
    assert cylinder(D1) is c1


@pytest.mark.parametrize("name", list(all_maps()))
def test_constant_homotopy_is_valid(name):
    f = all_maps()[name]
    d = constant_homotopy(f)
    verdict = verify_homotopy(d, require_proper=True)
    assert verdict.valid and verdict.ok
    assert verdict.proper == {"f1": True, "f2": True, "gamma": True}


def test_point_cylinder_identity_diagram():
    D0 = standard_simplex(0)
    cyl = cylinder(D0)
    d = diagram(identity_map(D0), identity_map(D0), cyl.projection)
    assert verify_homotopy(d).ok


def test_perturbed_gamma_reports_witness():
    D1 = standard_simplex(1)
    d = constant_homotopy(identity_map(D1))
    images = dict(d.gamma.images)
    images["(1,0)"] = D1.simplex("1")
    bad = SimplicialMap(d.gamma.source, D1, images)
    verdict = verify_homotopy(HomotopyDiagram(d.f1, d.f2, bad, d.cyl))
    assert not verdict.valid and verdict.witness == ("d0x1", "0")


def test_mismatched_diagram_rejected():
    f = maps()["fold"]
    g = identity_map(standard_simplex(1))
    with pytest.raises(SimplicialError):
        diagram(f, g, constant_homotopy(f).gamma)


def test_nonconstant_homotopy():
    f1, f2, gamma = meet_homotopy()
    assert validate_map(gamma) == []
    d = diagram(f1, f2, gamma)
    assert verify_homotopy(d, require_proper=True).ok
    swapped = diagram(f2, f1, gamma)
    assert not verify_homotopy(swapped).valid
    cert = eta_endpoints(d)
    assert cert.status == Status.PASS


def test_rotation_endpoints():
    A, B = W("a"), W("b")
    zero = StarPolynomial()
    D = ((A, zero), (zero, B))
    assert rotate(D, 0) == D
    assert rotate(D, 1) == ((B, zero), (zero, A))
    assert OMEGA[1] == ((0, 1), (-1, 0))


@pytest.mark.parametrize("name", ["id_Delta0", "id_Delta1", "fold", "swap", "collapse_S1", "swap_edges"])
def test_eta_endpoints_on_constant_homotopies(name):
    cert = eta_endpoints(constant_homotopy(maps()[name]))
    assert isinstance(cert, EtaCertificate)
    assert cert.status == Status.PASS and cert.failures() == []
    assert all(len(e.decisions) == 6 for e in cert.entries)
    assert cert.operator_checks


def test_operator_map_recovers_endpoints():
    f1, f2, gamma = meet_homotopy()
    d = diagram(f1, f2, gamma)
    assert genmaps_equal(operator_map(d, 0), induced_hom(f1)) == Decision.EQUAL
    assert genmaps_equal(operator_map(d, 1), induced_hom(f2)) == Decision.EQUAL
