import math
import random

import pytest

from solidschemes import corpus, scheme, solid
from solidschemes import primes as P
from solidschemes.errors import ConstraintViolation, IncompatibleCharts, NotAPoint
from solidschemes.scheme import ClassificationData, ExponentMap
from solidschemes.solid import TorsionFamily
from solidschemes.spectrum import CyclicStalk, Line, LocalAt, PointSet, Torsion

SPEC_Z = scheme.make(1, P.ALL)
ORIGINS = scheme.make(1, P.ALL, C=P.EMPTY)


def raw(q, S_inf, fin=None, C=P.EMPTY):
    fin = fin or TorsionFamily(P.EMPTY)
    return ClassificationData(ExponentMap.build(S_inf, fin), q, C)


def test_validate_examples():
    assert scheme.validate(raw(1, P.ALL, C=P.ALL)) == SPEC_Z
    with pytest.raises(ConstraintViolation):
        scheme.validate(raw(0, P.finite([2])))
    spec_q = scheme.validate(raw(1, P.EMPTY))
    assert scheme.points(spec_q) == PointSet(True)
    with pytest.raises(ConstraintViolation):
        scheme.validate(raw(1, P.finite([2]), solid.finite_family({2: 1})))
    # C is cut down to E, and forgotten when q = 0
    assert scheme.validate(raw(1, P.finite([3]), C=P.ALL)).C == P.finite([3])
    assert scheme.validate(raw(0, P.EMPTY, solid.finite_family({2: 1}), C=P.ALL)).C == P.EMPTY


def test_points_and_stalks():
    assert scheme.points(SPEC_Z) == PointSet(True, P.ALL, P.EMPTY)
    d = scheme.make(0, P.EMPTY, {2: 3})
    assert scheme.points(d) == PointSet(False, P.EMPTY, P.finite([2]))
    assert scheme.stalk_at(d, Torsion(2)) == CyclicStalk(2, 3)
    assert scheme.stalk_at(SPEC_Z, Line(101)) == LocalAt(101)
    with pytest.raises(NotAPoint):
        scheme.stalk_at(d, Line(2))
    assert SPEC_Z.e(7) == math.inf


def test_is_open_examples():
    assert scheme.is_open(SPEC_Z, PointSet(True, P.cofinite([2, 3])))
    assert not scheme.is_open(SPEC_Z, PointSet(False, P.finite([2])))
    d = scheme.make(0, P.EMPTY, {2: 1, 3: 1, 5: 1})
    assert scheme.is_open(d, PointSet(False, P.EMPTY, P.finite([3, 5])))
    # {Q} alone is open in the all-origins gluing but not in Spec Z
    assert scheme.is_open(ORIGINS, PointSet(True, P.EMPTY))
    assert not scheme.is_open(SPEC_Z, PointSet(True, P.EMPTY))


def test_iso_examples():
    a = scheme.make(1, P.ALL, C=P.cofinite([2]))
    b = scheme.make(1, P.ALL, C=P.cofinite([5]))
    assert scheme.iso(a, b)
    assert not scheme.iso(SPEC_Z, ORIGINS)
    assert not scheme.iso(scheme.make(0, P.EMPTY, {3: 1}), scheme.make(0, P.EMPTY, {3: 2}))


def test_is_affine_examples():
    assert scheme.is_affine(solid.classification_data(solid.cyclic(12))) == solid.cyclic(12)
    assert scheme.is_affine(ORIGINS) is None
    infinite_discrete = scheme.validate(raw(0, P.EMPTY, solid.family(P.cofinite([2]), 1)))
    assert scheme.is_affine(infinite_discrete) is None


def test_scheme_hom_examples():
    d4 = solid.classification_data(solid.cyclic(4))
    d8 = solid.classification_data(solid.cyclic(8))
    assert scheme.scheme_hom_exists(d4, d8)
    assert not scheme.scheme_hom_exists(d8, d4)
    assert not scheme.scheme_hom_exists(SPEC_Z, ORIGINS)
    assert scheme.scheme_hom_exists(ORIGINS, SPEC_Z)


def test_scheme_hom_reflexive_transitive_and_iso():
    rng = random.Random(5)
    ds = [corpus.random_scheme(rng) for _ in range(50)]
    for d in ds:
        assert scheme.scheme_hom_exists(d, d)
    for a in ds[:30]:
        for b in ds[:30]:
            if scheme.iso(a, b):
                assert scheme.scheme_hom_exists(a, b) and scheme.scheme_hom_exists(b, a)
            if not scheme.scheme_hom_exists(a, b):
                continue
            for c in ds[:30]:
                if scheme.scheme_hom_exists(b, c):
                    assert scheme.scheme_hom_exists(a, c)


def test_symdiff_examples():
    Z2, Z3 = solid.localized(P.finite([2])), solid.localized(P.finite([3]))
    assert scheme.symdiff_points(Z2, Z3) == [Line(2), Line(3)]
    assert scheme.symdiff_points(Z2, Z2) == []
    a = solid.product(P.finite([2, 3]), {2: 2})
    b = solid.product(P.finite([2, 5]), {2: 2})
    assert scheme.symdiff_points(a, b) == [Line(3), Line(5)]


def test_affine_union_examples():
    a = solid.product(P.finite([2, 3]), {2: 2})
    b = solid.product(P.finite([2, 5]), {2: 2})
    assert scheme.affine_union(a, b) == solid.product(P.finite([2]), {2: 2})
    assert scheme.affine_union(solid.localized(P.finite([2])), solid.localized(P.finite([3]))) == solid.Z
    with pytest.raises(IncompatibleCharts):
        scheme.affine_union(a, solid.localized(P.finite([3])))
    with pytest.raises(IncompatibleCharts):
        scheme.symdiff_points(a, solid.product(P.finite([2]), {2: 3}))


def test_tower_examples():
    assert scheme.tower(SPEC_Z, 3) == [solid.Z] * 4
    stages = scheme.tower(ORIGINS, 2)
    assert stages == [solid.Q, solid.localized(P.cofinite([2])), solid.localized(P.cofinite([2, 3]))]
    for s in stages:
        sp = solid.classification_data(s)
        assert scheme.is_open(ORIGINS, scheme.points(sp))
    d = scheme.make(0, P.EMPTY, {2: 1, 3: 1, 5: 1})
    stages = scheme.tower(d, 2)
    assert stages == [solid.cyclic(2), solid.cyclic(6), solid.cyclic(30)]
    assert scheme.iso(solid.classification_data(stages[-1]), d)


def test_tower_limit_of_origins():
    assert scheme.iso(scheme.tower_limit(ORIGINS), ORIGINS)
