import random

import pytest

from solidschemes import corpus, scheme, solid, spectrum
from solidschemes import primes as P
from solidschemes.errors import NotAPoint, NotASubset
from solidschemes.spectrum import CyclicStalk, Generic, Line, LocalAt, PointSet, RatField, Torsion

KINDS = ["zero", "cyclic", "localized", "product", "tower"]


def test_spectrum_of_examples():
    sp = spectrum.spectrum_of(solid.cyclic(12))
    assert (sp.has_generic, sp.line, sp.torsion.K) == (False, P.EMPTY, P.finite([2, 3]))
    sp = spectrum.spectrum_of(solid.localized(P.finite([2])))
    assert (sp.has_generic, sp.line, sp.torsion.K) == (True, P.cofinite([2]), P.EMPTY)
    assert spectrum.spectrum_of(solid.Zero()).points.is_empty()


def test_stalks():
    assert spectrum.stalk_at(solid.cyclic(12), Torsion(2)) == CyclicStalk(2, 2)
    assert spectrum.stalk_at(solid.localized(P.finite([2])), Generic()) == RatField()
    assert spectrum.stalk_at(solid.localized(P.finite([2])), Line(3)) == LocalAt(3)
    t = solid.tower(P.ALL, P.ALL, 1, {7: 3})
    assert spectrum.stalk_at(t, Torsion(7)) == CyclicStalk(7, 3)
    with pytest.raises(NotAPoint):
        spectrum.stalk_at(solid.cyclic(12), Torsion(5))
    with pytest.raises(NotAPoint):
        spectrum.stalk_at(solid.cyclic(12), Generic())


def test_open_examples():
    Z2 = solid.localized(P.finite([2]))
    assert spectrum.is_open_affine(Z2, PointSet(True, P.cofinite([2, 3, 5])))
    assert not spectrum.is_open_affine(Z2, PointSet(False, P.finite([3, 5])))
    t = solid.tower(P.ALL, P.ALL)
    assert spectrum.is_open_affine(t, PointSet(False, P.EMPTY, P.finite([3, 5])))
    assert not spectrum.is_open_affine(t, PointSet(True, P.EMPTY, P.finite([3, 5])))
    with pytest.raises(NotASubset):
        spectrum.is_open_affine(Z2, PointSet(False, P.finite([2])))


@pytest.mark.parametrize("kind", KINDS)
def test_no_repeated_prime_labels(kind):
    rng = random.Random(3)
    for _ in range(100):
        s = corpus.random_ring(rng, kind)
        sp = spectrum.spectrum_of(s)
        assert (sp.line & sp.torsion.K).is_empty()
        d = solid.classification_data(s)
        for p in sp.torsion.K.take(8):
            assert spectrum.stalk_at(s, Torsion(p)).e == d.e(p)


def test_diagram_discrete():
    assert spectrum.ascii_diagram(solid.cyclic(6)) == "  *    *\n (2)  (3)\n"
    assert spectrum.ascii_diagram(solid.Zero()) == "(empty spectrum)\n"


def test_diagram_line_and_raised_torsion():
    pic = spectrum.ascii_diagram(solid.product(P.finite([2, 3]), {2: 2}))
    rows = pic.splitlines()
    assert rows[0].strip() == "(2)"
    assert rows[1].strip() == "*"
    assert rows[2].startswith("(0)--") and rows[2].endswith("...")
    assert rows[3].split() == ["(5)", "(7)", "(11)", "(13)", "..."]
    assert pic.endswith("\n")
    # deterministic
    assert pic == spectrum.ascii_diagram(solid.product(P.finite([2, 3]), {2: 2}))
    line = spectrum.ascii_diagram(solid.localized(P.finite([2]))).splitlines()
    assert line[1].split()[:3] == ["(3)", "(5)", "(7)"]
