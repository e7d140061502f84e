"""Random and exhaustive generators for rings, schemes and point sets.

All randomness flows through an explicit ``random.Random`` so that the CLI
``--seed`` and the test suite are reproducible.
"""

from __future__ import annotations

import random

from . import primes as P
from . import scheme as sch
from . import solid
from .primes import PrimeSet
from .scheme import ClassificationData
from .spectrum import PointSet

POOL = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29)


def random_primeset(rng: random.Random, pool=POOL, max_basis: int = 4) -> PrimeSet:
    basis = rng.sample(pool, rng.randint(0, max_basis))
    return P.PrimeSet(rng.random() < 0.5, tuple(sorted(basis)))


def finite_subset(rng: random.Random, S: PrimeSet, max_size: int = 3, window: int = 12) -> PrimeSet:
    """A random finite subset of ``S`` drawn from its first ``window`` members."""
    head = S.take(window)
    return P.finite(rng.sample(head, rng.randint(0, min(max_size, len(head)))))


def random_family(rng: random.Random, K: PrimeSet, max_exp: int = 4) -> solid.TorsionFamily:
    if not K.cofinite:
        return solid.finite_family({p: rng.randint(1, max_exp) for p in K.basis})
    keys = finite_subset(rng, K).basis
    return solid.family(K, rng.randint(1, max_exp), {p: rng.randint(1, max_exp) for p in keys})


def random_cyclic(rng: random.Random, pool=POOL, max_exp: int = 3):
    ps = rng.sample(pool, rng.randint(0, 3))
    return solid.canonicalize(solid.Cyclic({p: rng.randint(1, max_exp) for p in ps}))


def random_ring(rng: random.Random, kind: str | None = None):
    kind = kind or rng.choice(["zero", "cyclic", "localized", "product", "tower"])
    if kind == "zero":
        return solid.Zero()
    if kind == "cyclic":
        return random_cyclic(rng)
    if kind == "localized":
        return solid.localized(random_primeset(rng))
    if kind == "product":
        J = random_primeset(rng)
        if J.is_empty():
            J = P.finite(rng.sample(POOL, 1))
        tors = finite_subset(rng, J, max_size=2)
        if tors.is_empty():
            tors = P.finite(J.take(1))
        return solid.assemble(J, random_family(rng, tors))
    if kind == "tower":
        J = P.PrimeSet(True, random_primeset(rng).basis)
        K = J - finite_subset(rng, J)
        return solid.assemble(J, random_family(rng, K))
    raise ValueError(kind)


def random_scheme(rng: random.Random, q: int | None = None) -> ClassificationData:
    q = rng.randint(0, 1) if q is None else q
    S_inf = random_primeset(rng) if q == 1 and rng.random() < 0.8 else P.EMPTY
    S_fin = random_primeset(rng) - S_inf
    fin = random_family(rng, S_fin)
    E = S_inf | S_fin
    choice = rng.randrange(5)
    if choice == 0:
        C = E
    elif choice == 1:
        C = P.EMPTY
    elif choice == 2:
        C = (E - finite_subset(rng, E)) | finite_subset(rng, E)
    else:
        C = random_primeset(rng) & E
    return sch.validate(ClassificationData(sch.ExponentMap.build(S_inf, fin), q, C))


def random_subset(rng: random.Random, S: PrimeSet) -> PrimeSet:
    """Representable subsets of ``S``: all, none, cofinite-in-S, or random."""
    choice = rng.randrange(4)
    if choice == 0:
        return S
    if choice == 1:
        return P.EMPTY
    if choice == 2:
        return S - finite_subset(rng, S)
    return random_primeset(rng) & S


def random_pointset(rng: random.Random, space: PointSet) -> PointSet:
    return PointSet(space.has_generic and rng.random() < 0.6,
                    random_subset(rng, space.line), random_subset(rng, space.torsion))


def random_chart_pair(rng: random.Random):
    """Two affine opens through the generic point of one random scheme.

    Both charts are ``{Q} u W`` with ``W`` a finite perturbation of C, so
    they are opens of the same scheme and carry its stalks.
    """
    d = random_scheme(rng, q=1)

    def chart():
        W = (d.C - finite_subset(rng, d.C)) | finite_subset(rng, d.E - d.C)
        return sch.chart_of(d, W & d.e.S_inf, W & d.e.S_fin)

    return d, chart(), chart()


def solid_corpus(rng: random.Random, samples: int = 200, max_cyclic: int = 30) -> list:
    """Zero and Z/n for n <= max_cyclic, then Z[J^-1], a product and a tower per sampled J."""
    out = [solid.cyclic(n) for n in range(1, max_cyclic + 1)]
    seen = set(out)
    for _ in range(samples):
        J = random_primeset(rng)
        cands = [solid.localized(J)]
        if not J.is_empty():
            tors = finite_subset(rng, J, max_size=2)
            if tors.is_empty():
                tors = P.finite(J.take(1))
            cands.append(solid.assemble(J, random_family(rng, tors)))
        Jt = J if J.cofinite else ~J
        cands.append(solid.assemble(Jt, random_family(rng, Jt - finite_subset(rng, Jt))))
        for c in cands:
            if c not in seen:
                seen.add(c)
                out.append(c)
    return out
