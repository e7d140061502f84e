"""Subterminal schemes as classification data (e, q, C).

* ``e``: exponent function on primes, valued in {0, 1, 2, ...} u {inf}
* ``q``: 1 iff the generic point (stalk Q) is present
* ``C``: a subset of E = {p : e(p) >= 1}, meaningful up to finite
  symmetric difference; opens through the generic point must contain all
  but finitely many points of C.

Points: the generic point when q = 1, a line point (stalk Z_(p)) for each p
with e(p) = inf, a torsion point (stalk Z/p^e(p)) for each p with
1 <= e(p) < inf.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import primes as P
from . import solid
from .errors import ConstraintViolation, IncompatibleCharts, LemmaViolation, NotAPoint, Unrepresentable
from .primes import PrimeSet
from .solid import SolidRingDesc, TorsionFamily
from .spectrum import (
    CyclicStalk, Generic, Line, LocalAt, PointSet, RatField, SpecPoint, Torsion,
    check_subset, spectrum_of,
)


@dataclass(frozen=True)
class ExponentMap:
    S_inf: PrimeSet
    S_fin: PrimeSet
    default_exp: int = 1
    overrides: tuple[tuple[int, int], ...] = ()

    @classmethod
    def build(cls, S_inf: PrimeSet, fin: TorsionFamily) -> ExponentMap:
        return cls(S_inf, fin.K, fin.default_exp, fin.overrides)

    @property
    def finite_part(self) -> TorsionFamily:
        return TorsionFamily(self.S_fin, self.default_exp, self.overrides)

    def __call__(self, p: int) -> float | int:
        if p in self.S_inf:
            return math.inf
        return self.finite_part.exponent(p) or 0

    def support(self) -> PrimeSet:
        """E, the primes with e(p) >= 1."""
        return self.S_inf | self.S_fin


@dataclass(frozen=True)
class ClassificationData:
    e: ExponentMap
    q: int
    C: PrimeSet

    @property
    def E(self) -> PrimeSet:
        return self.e.support()

    @property
    def E_lt(self) -> PrimeSet:
        """Primes carrying a torsion point (1 <= e < inf)."""
        return self.e.S_fin


def validate(d: ClassificationData) -> ClassificationData:
    """Check the invariants of ``d`` and return its normal form.

    C is cut down to C & E, and to {} when q = 0 since it never constrains
    an open set without the generic point.
    """
    if d.q not in (0, 1):
        raise ConstraintViolation(f"q must be 0 or 1, got {d.q!r}")
    S_inf = P.PrimeSet(d.e.S_inf.cofinite, P._check_basis(d.e.S_inf.basis))
    S_fin = P.PrimeSet(d.e.S_fin.cofinite, P._check_basis(d.e.S_fin.basis))
    overlap = S_inf & S_fin
    if not overlap.is_empty():
        raise ConstraintViolation(f"primes {overlap!r} cannot be both infinite and finite exponents")
    if d.q == 0 and not S_inf.is_empty():
        raise ConstraintViolation(
            "a point with stalk Z_(p) forces the generic point: q must be 1 when e takes the value inf")
    fin = solid.family(S_fin, d.e.default_exp, d.e.overrides)
    e = ExponentMap.build(S_inf, fin)
    C = P.PrimeSet(d.C.cofinite, P._check_basis(d.C.basis))
    C = C & e.support() if d.q == 1 else P.EMPTY
    return ClassificationData(e, d.q, C)


def make(q: int, S_inf: PrimeSet, fin: TorsionFamily | dict | None = None, C: PrimeSet | None = None):
    """Convenience constructor; ``C`` defaults to E."""
    if fin is None:
        fin = TorsionFamily(P.EMPTY)
    elif isinstance(fin, dict):
        fin = solid.finite_family(fin)
    e = ExponentMap.build(S_inf, fin)
    return validate(ClassificationData(e, q, e.support() if C is None else C))


def points(d: ClassificationData) -> PointSet:
    return PointSet(d.q == 1, d.e.S_inf, d.e.S_fin)


def stalk_at(d: ClassificationData, x: SpecPoint):
    if isinstance(x, Generic):
        if d.q == 1:
            return RatField()
    elif isinstance(x, Line):
        if x.p in d.e.S_inf:
            return LocalAt(x.p)
    elif isinstance(x, Torsion):
        if x.p in d.e.S_fin:
            return CyclicStalk(x.p, d.e(x.p))
    raise NotAPoint(f"{x!r} is not a point of this scheme")


def is_open(d: ClassificationData, U: PointSet) -> bool:
    check_subset(U, points(d))
    if not U.has_generic:
        return U.line.is_empty()
    return (d.C - (U.line | U.torsion)).is_finite()


def iso(d1: ClassificationData, d2: ClassificationData) -> bool:
    return d1.e == d2.e and d1.q == d2.q and P.almost_equal(d1.C, d2.C)


def is_affine(d: ClassificationData) -> SolidRingDesc | None:
    """The solid ring whose spectrum is ``d``, or None if ``d`` is not affine."""
    fin = d.e.finite_part
    if d.q == 0:
        if d.e.S_fin.cofinite:
            return None
        return solid.assemble(None, fin)
    if not P.almost_equal(d.C, d.E):
        return None
    try:
        return solid.assemble(~d.e.S_inf, fin)
    except ConstraintViolation as exc:
        raise Unrepresentable(str(exc)) from exc


def scheme_hom_exists(X: ClassificationData, S: ClassificationData) -> bool:
    """Whether a (necessarily unique) morphism of schemes ``X -> S`` exists.

    Points map to the point with the same label; the local maps available
    are Q->Q, Z_(p)->Z_(p), Z_(p)->Z/p^a and Z/p^b->Z/p^a for b >= a.
    Continuity at the generic point needs C_X \\ C_S finite.
    """
    if X.q == 1 and S.q == 0:
        return False
    if not X.e.S_inf <= S.e.S_inf:
        return False
    if not X.e.S_fin <= S.e.S_inf | S.e.S_fin:
        return False
    if S.e.finite_part.compare_on_common(X.e.finite_part, lambda es, ex: es >= ex):
        return False
    if X.q == 1 and not P.almost_subset(X.C, S.C):
        return False
    return True


# ---------------------------------------------------------------------------
# charts containing the generic point


def _chart(s: SolidRingDesc):
    J = solid.inverted_part(s)
    if J is None:
        raise IncompatibleCharts(f"{s!r} has no generic point")
    return ~J, solid.torsion_of(s)


def _check_compatible(line_a, tors_a, line_b, tors_b):
    for line, tors in ((line_a, tors_b), (line_b, tors_a)):
        clash = line & tors.K
        if not clash.is_empty():
            raise IncompatibleCharts(f"primes {clash!r} are line points in one chart and torsion in the other")
    bad = tors_a.compare_on_common(tors_b, lambda a, b: a == b)
    if bad:
        raise IncompatibleCharts(f"torsion exponents disagree at {bad}")


def symdiff_points(A: SolidRingDesc, B: SolidRingDesc) -> list[SpecPoint]:
    """Points in exactly one of Spec A, Spec B, for two charts through Q."""
    line_a, tors_a = _chart(A)
    line_b, tors_b = _chart(B)
    _check_compatible(line_a, tors_a, line_b, tors_b)
    line = line_a ^ line_b
    tors = tors_a.K ^ tors_b.K
    if line.cofinite or tors.cofinite:
        raise LemmaViolation(
            f"charts {A!r} and {B!r} differ in infinitely many points; they cannot both be open")
    pts = [Line(p) for p in line.basis] + [Torsion(p) for p in tors.basis]
    return sorted(pts, key=lambda x: x.p)


def affine_union(A: SolidRingDesc, B: SolidRingDesc) -> SolidRingDesc:
    """Z[(I & J)^-1] x prod_{K | L} Z/p^e_p covering Spec A u Spec B."""
    line_a, tors_a = _chart(A)
    line_b, tors_b = _chart(B)
    _check_compatible(line_a, tors_a, line_b, tors_b)
    return solid.assemble(solid.inverted_part(A) & solid.inverted_part(B), tors_a.merge(tors_b))


def chart_of(d: ClassificationData, line: PrimeSet, tors: PrimeSet) -> SolidRingDesc:
    """The solid ring with the given line/torsion points and d's stalks."""
    if d.q == 0:
        return solid.assemble(None, d.e.finite_part.restrict(tors))
    return solid.assemble(~line, d.e.finite_part.restrict(tors))


def tower(d: ClassificationData, n: int) -> list[SolidRingDesc]:
    """Stages 0..n of a chain of affine opens exhausting ``d``.

    With q = 1 stage 0 is the chart {Q} u C; with q = 0 it is the first
    torsion point. Each later stage adds the next missing point in
    increasing prime order, until none remain.
    """
    if n < 0:
        raise ValueError("number of stages must be nonnegative")
    if d.q == 1:
        base = d.C
        rest = d.E - d.C
    else:
        base = P.finite(d.E.take(1))
        rest = d.E - base
    added = rest.take(n)
    stages = []
    for k in range(n + 1):
        pts = base | P.finite(added[:k])
        stages.append(chart_of(d, pts & d.e.S_inf, pts & d.e.S_fin))
    return stages


def tower_limit(d: ClassificationData) -> ClassificationData:
    """Classification data of the union of all tower stages.

    Recomputed from the stage-0 ring plus the enumerated remainder, so it
    can be checked against ``d`` with :func:`iso`.
    """
    stage0 = tower(d, 0)[0]
    base = solid.classification_data(stage0)
    covered = base.E
    rest = d.E - covered
    S_inf = base.e.S_inf | (rest & d.e.S_inf)
    fin = base.e.finite_part.merge(d.e.finite_part.restrict(rest))
    e = ExponentMap.build(S_inf, fin)
    return validate(ClassificationData(e, base.q, base.C))


def spectrum_data_points(s: SolidRingDesc) -> PointSet:
    sp = spectrum_of(s)
    return PointSet(sp.has_generic, sp.line, sp.torsion.K)
