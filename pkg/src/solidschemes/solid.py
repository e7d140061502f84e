"""Canonical descriptions of solid rings.

Five shapes cover every solid ring:

* ``Zero``                      the zero ring
* ``Cyclic(factors)``           Z/n with n >= 2, stored as its factorization
* ``Localized(J)``              Z[J^-1]; J = {} gives Z, J = P gives Q
* ``Product(J, tors)``          Z[J^-1] x prod Z/p^e, every torsion prime in J
* ``Tower(J, fam)``             colimit of Z[J_n^-1] x prod_{K_n} Z/q^e_q over
                                an infinite (cofinite) K inside J

The dataclass constructors accept anything; :func:`canonicalize` validates
and normalizes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from . import primes as P
from .errors import ConstraintViolation
from .primes import PrimeSet


def _pairs(mapping) -> tuple[tuple[int, int], ...]:
    if isinstance(mapping, dict):
        return tuple(sorted(mapping.items()))
    return tuple(sorted(tuple(kv) for kv in mapping))


def _check_exponents(pairs, what):
    keys = [p for p, _ in pairs]
    if len(set(keys)) != len(keys):
        raise ConstraintViolation(f"{what}: duplicate prime keys {keys}")
    for p, e in pairs:
        if not P.is_prime(p):
            raise ConstraintViolation(f"{what}: {p} is not a prime")
        if not isinstance(e, int) or isinstance(e, bool) or e < 1:
            raise ConstraintViolation(f"{what}: exponent of {p} must be a positive integer, got {e!r}")


@dataclass(frozen=True)
class TorsionFamily:
    """Exponents ``e_q >= 1`` for ``q`` in ``K``: ``default_exp`` unless overridden.

    Canonical form: overrides never repeat the default, and a finite ``K``
    always has ``default_exp == 1`` so every value is pinned by ``overrides``.
    """

    K: PrimeSet
    default_exp: int = 1
    overrides: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "overrides", _pairs(self.overrides))

    def exponent(self, p: int) -> int | None:
        if p not in self.K:
            return None
        for q, e in self.overrides:
            if q == p:
                return e
        return self.default_exp

    def items(self) -> list[tuple[int, int]]:
        if self.K.cofinite:
            raise ValueError("an infinite torsion family has no finite item list")
        return [(p, self.exponent(p)) for p in self.K.basis]

    def special_primes(self) -> set[int]:
        out = {p for p, _ in self.overrides}
        if not self.K.cofinite:
            out.update(self.K.basis)
        return out

    def restrict(self, S: PrimeSet) -> TorsionFamily:
        K = self.K & S
        if K.cofinite:
            return family(K, self.default_exp, {p: e for p, e in self.overrides if p in K})
        return family(K, 1, {p: self.exponent(p) for p in K.basis})

    def compare_on_common(self, other: TorsionFamily, test) -> list[int] | bool:
        """Primes of ``K & other.K`` where ``test(e_self, e_other)`` fails.

        Returns ``True`` instead of a list when the failure set is infinite.
        """
        common = self.K & other.K
        if not common.cofinite:
            return [p for p in common.basis if not test(self.exponent(p), other.exponent(p))]
        bad = [p for p in sorted(self.special_primes() | other.special_primes())
               if p in common and not test(self.exponent(p), other.exponent(p))]
        if not test(self.default_exp, other.default_exp):
            return True
        return bad

    def merge(self, other: TorsionFamily) -> TorsionFamily:
        clash = self.compare_on_common(other, lambda a, b: a == b)
        if clash:
            raise ConstraintViolation(f"torsion exponents disagree at {clash}")
        K = self.K | other.K
        if not K.cofinite:
            return family(K, 1, {p: self.exponent(p) or other.exponent(p) for p in K.basis})
        default = self.default_exp if self.K.cofinite else other.default_exp
        specials = sorted(self.special_primes() | other.special_primes())
        exps = {}
        for p in specials:
            e = self.exponent(p) or other.exponent(p)
            if e is not None:
                exps[p] = e
        return family(K, default, exps)


def family(K: PrimeSet, default_exp: int = 1, overrides=None) -> TorsionFamily:
    """Validated, canonical :class:`TorsionFamily`."""
    pairs = _pairs(overrides or {})
    _check_exponents(pairs, "torsion family")
    if not isinstance(default_exp, int) or default_exp < 1:
        raise ConstraintViolation(f"default exponent must be >= 1, got {default_exp!r}")
    for p, _ in pairs:
        if p not in K:
            raise ConstraintViolation(f"override prime {p} lies outside {K!r}")
    if not K.cofinite:
        exps = dict(pairs)
        full = {p: exps.get(p, default_exp) for p in K.basis}
        return TorsionFamily(K, 1, tuple((p, e) for p, e in full.items() if e != 1))
    return TorsionFamily(K, default_exp, tuple((p, e) for p, e in pairs if e != default_exp))


def finite_family(mapping) -> TorsionFamily:
    pairs = _pairs(mapping)
    _check_exponents(pairs, "torsion map")
    return family(P.finite([p for p, _ in pairs]), 1, pairs)


# ---------------------------------------------------------------------------
# ring descriptions


class SolidRing:
    """Marker base for the five description shapes."""

    __slots__ = ()


@dataclass(frozen=True)
class Zero(SolidRing):
    pass


@dataclass(frozen=True)
class Cyclic(SolidRing):
    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", _pairs(self.factors))

    @property
    def n(self) -> int:
        return P.unfactor(self.factors)


@dataclass(frozen=True)
class Localized(SolidRing):
    J: PrimeSet = P.EMPTY


@dataclass(frozen=True)
class Product(SolidRing):
    J: PrimeSet = P.EMPTY
    tors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "tors", _pairs(self.tors))


@dataclass(frozen=True)
class Tower(SolidRing):
    J: PrimeSet = P.ALL
    fam: TorsionFamily = field(default_factory=lambda: TorsionFamily(P.ALL))


SolidRingDesc = Union[Zero, Cyclic, Localized, Product, Tower]

Z = Localized(P.EMPTY)
Q = Localized(P.ALL)


def canonicalize(raw: SolidRingDesc) -> SolidRingDesc:
    """Validate ``raw`` and return its canonical description.

    Raises ConstraintViolation for a torsion prime outside the inverted set,
    a finite or misplaced tower support, or a zero exponent.
    """
    if isinstance(raw, Zero):
        return Zero()
    if isinstance(raw, Cyclic):
        _check_exponents(raw.factors, "Z/n")
        if not raw.factors:
            return Zero()
        return Cyclic(raw.factors)
    if isinstance(raw, Localized):
        return Localized(P.PrimeSet(raw.J.cofinite, P._check_basis(raw.J.basis)))
    if isinstance(raw, Product):
        J = P.PrimeSet(raw.J.cofinite, P._check_basis(raw.J.basis))
        _check_exponents(raw.tors, "product torsion")
        if not raw.tors:
            return Localized(J)
        outside = [p for p, _ in raw.tors if p not in J]
        if outside:
            raise ConstraintViolation(
                f"torsion primes {outside} must be inverted in Z[1/{J!r}]")
        return Product(J, raw.tors)
    if isinstance(raw, Tower):
        J = P.PrimeSet(raw.J.cofinite, P._check_basis(raw.J.basis))
        fam = raw.fam
        K = P.PrimeSet(fam.K.cofinite, P._check_basis(fam.K.basis))
        if not K.cofinite:
            raise ConstraintViolation(f"tower support K={K!r} must be infinite")
        if not K <= J:
            raise ConstraintViolation(f"tower support K={K!r} is not inside J={J!r}")
        return Tower(J, family(K, fam.default_exp, fam.overrides))
    raise TypeError(f"not a solid ring description: {raw!r}")


# convenience constructors (always canonical)

def cyclic(n: int) -> SolidRingDesc:
    if n < 1:
        raise ConstraintViolation(f"Z/{n} is not a cyclic ring with n >= 1")
    return canonicalize(Cyclic(P.factor(n)))


def localized(J: PrimeSet) -> SolidRingDesc:
    return canonicalize(Localized(J))


def product(J: PrimeSet, tors) -> SolidRingDesc:
    return canonicalize(Product(J, _pairs(tors)))


def tower(J: PrimeSet, K: PrimeSet, default_exp: int = 1, overrides=None) -> SolidRingDesc:
    return canonicalize(Tower(J, TorsionFamily(K, default_exp, _pairs(overrides or {}))))


# ---------------------------------------------------------------------------
# decomposition helpers


def inverted_part(s: SolidRingDesc) -> PrimeSet | None:
    """J for the Z[J^-1] factor, or None when there is none (types 1 and 0)."""
    if isinstance(s, (Localized, Product, Tower)):
        return s.J
    return None


def torsion_of(s: SolidRingDesc) -> TorsionFamily:
    if isinstance(s, Cyclic):
        return finite_family(s.factors)
    if isinstance(s, Product):
        return finite_family(s.tors)
    if isinstance(s, Tower):
        return s.fam
    return TorsionFamily(P.EMPTY)


def assemble(J: PrimeSet | None, tors: TorsionFamily) -> SolidRingDesc:
    """Inverse of (inverted_part, torsion_of)."""
    if J is None:
        if tors.K.cofinite:
            raise ConstraintViolation("infinitely many torsion factors need a Z[J^-1] factor")
        return canonicalize(Cyclic(tors.items()))
    if tors.K.cofinite:
        return canonicalize(Tower(J, tors))
    return canonicalize(Product(J, tors.items()))


def ring_product(a: SolidRingDesc, b: SolidRingDesc) -> SolidRingDesc:
    """The product ``a x b``, provided it is again solid.

    Solid only when at most one side has a Z[J^-1] factor and the torsion
    primes of the two sides are disjoint (Z/2 x Z/2 is not solid).
    """
    Ja, Jb = inverted_part(a), inverted_part(b)
    if Ja is not None and Jb is not None:
        raise ConstraintViolation("a product with two subrings of Q is not solid")
    ta, tb = torsion_of(a), torsion_of(b)
    shared = ta.K & tb.K
    if not shared.is_empty():
        raise ConstraintViolation(f"repeated torsion primes {shared!r}: product is not solid")
    if isinstance(a, Zero):
        return canonicalize(b)
    if isinstance(b, Zero):
        return canonicalize(a)
    J = Ja if Ja is not None else Jb
    return assemble(J, ta.merge(tb))


def tower_stage(s: Tower, n: int) -> SolidRingDesc:
    """Stage ``n`` of the colimit: Z[J_n^-1] x prod_{q in K_n} Z/q^e_q.

    K is enumerated in increasing order; ``J_n = (J \\ K) | K_n``.
    """
    K_n = P.finite(s.fam.K.take(n))
    J_n = (s.J - s.fam.K) | K_n
    return assemble(J_n, s.fam.restrict(K_n))


# ---------------------------------------------------------------------------
# operations


def characteristic(s: SolidRingDesc) -> int:
    if isinstance(s, Zero):
        return 1
    if isinstance(s, Cyclic):
        return s.n
    return 0


def localize(s: SolidRingDesc, T: PrimeSet) -> SolidRingDesc:
    """Invert every prime of ``T`` in ``s``."""
    J = inverted_part(s)
    tors = torsion_of(s).restrict(~T)
    if J is None:
        return assemble(None, tors)
    return assemble(J | T, tors)


def classification_data(s: SolidRingDesc):
    """(e, q, C) of Spec ``s``."""
    from .scheme import ClassificationData, ExponentMap

    J = inverted_part(s)
    tors = torsion_of(s)
    if J is None:
        return ClassificationData(ExponentMap.build(P.EMPTY, tors), 0, P.EMPTY)
    e = ExponentMap.build(~J, tors)
    return ClassificationData(e, 1, e.support())


def ring_hom_exists(B: SolidRingDesc, A: SolidRingDesc) -> bool:
    """Whether a (necessarily unique) ring map ``B -> A`` exists."""
    from .scheme import scheme_hom_exists

    return scheme_hom_exists(classification_data(A), classification_data(B))
