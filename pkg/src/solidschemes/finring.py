"""Explicit finite commutative rings and brute-force homomorphism counting.

This is the oracle side of the package: everything here is decided by
looking at addition and multiplication tables, never by the
classification.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from . import primes as P
from . import solid
from .errors import AxiomViolation, SizeBound
from .solid import Cyclic, Localized, Product, SolidRingDesc, Tower, Zero

DEFAULT_MAX_ORDER = 64

Table = tuple[tuple[int, ...], ...]


@dataclass(frozen=True, eq=False)
class FiniteRingTable:
    """A commutative unital ring on elements ``0 .. order-1``.

    Construction checks every ring axiom and raises AxiomViolation.
    """

    order: int
    add: Table
    mul: Table
    zero: int
    one: int
    name: str = field(default="?", compare=False)

    def __post_init__(self):
        check_axioms(self)

    def __eq__(self, other):
        if not isinstance(other, FiniteRingTable):
            return NotImplemented
        return (self.order, self.add, self.mul, self.zero, self.one) == (
            other.order, other.add, other.mul, other.zero, other.one)

    def __hash__(self):
        return hash((self.order, self.add, self.mul, self.zero, self.one))

    def __repr__(self):
        return f"<FiniteRingTable {self.name} order={self.order}>"

    def neg(self, x: int) -> int:
        return self._neg[x]

    @cached_property
    def _neg(self) -> list[int]:
        out = [0] * self.order
        for x in range(self.order):
            out[x] = self.add[x].index(self.zero)
        return out

    def times(self, k: int, x: int) -> int:
        """``k * x`` for ``k >= 0``, by double-and-add in the additive table."""
        acc, base = self.zero, x
        while k:
            if k & 1:
                acc = self.add[acc][base]
            base = self.add[base][base]
            k >>= 1
        return acc

    def additive_order(self, x: int) -> int:
        acc, k = x, 1
        while acc != self.zero:
            acc = self.add[acc][x]
            k += 1
        return k

    @cached_property
    def characteristic(self) -> int:
        return self.additive_order(self.one)

    @cached_property
    def idempotents(self) -> list[int]:
        return [x for x in range(self.order) if self.mul[x][x] == x]

    @cached_property
    def _corners(self) -> dict:
        return {}

    @cached_property
    def units(self) -> frozenset[int]:
        return frozenset(x for x in range(self.order) if self.one in self.mul[x])


def check_axioms(R: FiniteRingTable) -> None:
    n = R.order
    rng = range(n)
    if n < 1 or len(R.add) != n or len(R.mul) != n:
        raise AxiomViolation(f"{R.name}: tables must be {n}x{n}")
    if any(len(r) != n for r in R.add) or any(len(r) != n for r in R.mul):
        raise AxiomViolation(f"{R.name}: tables must be {n}x{n}")
    add, mul, z, o = R.add, R.mul, R.zero, R.one
    for a in rng:
        if add[z][a] != a:
            raise AxiomViolation(f"{R.name}: zero is not additive identity at {a}")
        if mul[o][a] != a:
            raise AxiomViolation(f"{R.name}: one is not multiplicative identity at {a}")
        if z not in add[a]:
            raise AxiomViolation(f"{R.name}: {a} has no additive inverse")
        for b in rng:
            if add[a][b] != add[b][a] or mul[a][b] != mul[b][a]:
                raise AxiomViolation(f"{R.name}: not commutative at ({a},{b})")
    for a in rng:
        ra, ma = add[a], mul[a]
        for b in rng:
            ab, mab = ra[b], ma[b]
            for c in rng:
                if add[ab][c] != ra[add[b][c]]:
                    raise AxiomViolation(f"{R.name}: addition not associative at ({a},{b},{c})")
                if mul[mab][c] != ma[mul[b][c]]:
                    raise AxiomViolation(f"{R.name}: multiplication not associative at ({a},{b},{c})")
                if ma[add[b][c]] != add[mab][ma[c]]:
                    raise AxiomViolation(f"{R.name}: not distributive at ({a},{b},{c})")


def _bound(order: int, max_order: int) -> None:
    if order > max_order:
        raise SizeBound(f"ring of order {order} exceeds the bound {max_order}")


# ---------------------------------------------------------------------------
# constructors


def ft_cyclic(n: int, max_order: int = DEFAULT_MAX_ORDER) -> FiniteRingTable:
    _bound(n, max_order)
    return _cyclic_table(n)


@lru_cache(maxsize=None)
def _cyclic_table(n: int) -> FiniteRingTable:
    if n < 1:
        raise ValueError(f"Z/{n}: n must be >= 1")
    rng = range(n)
    add = tuple(tuple((a + b) % n for b in rng) for a in rng)
    mul = tuple(tuple((a * b) % n for b in rng) for a in rng)
    return FiniteRingTable(n, add, mul, 0, 1 % n, name=f"Z/{n}")


def ft_product(R: FiniteRingTable, S: FiniteRingTable, max_order: int = DEFAULT_MAX_ORDER) -> FiniteRingTable:
    n = R.order * S.order
    _bound(n, max_order)
    pairs = [(r, s) for r in range(R.order) for s in range(S.order)]
    idx = {pr: i for i, pr in enumerate(pairs)}
    add = tuple(tuple(idx[R.add[a][c], S.add[b][d]] for c, d in pairs) for a, b in pairs)
    mul = tuple(tuple(idx[R.mul[a][c], S.mul[b][d]] for c, d in pairs) for a, b in pairs)
    return FiniteRingTable(n, add, mul, idx[R.zero, S.zero], idx[R.one, S.one],
                           name=f"{R.name} x {S.name}")


def poly_name(n: int, coeffs) -> str:
    deg = len(coeffs) - 1
    terms = []
    for i, c in enumerate(coeffs):
        k = deg - i
        if c == 0:
            continue
        mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        if not mono:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}{mono}")
    return f"Z/{n}[x]/({'+'.join(terms)})"


def ft_polyquot(n: int, coeffs, max_order: int = DEFAULT_MAX_ORDER) -> FiniteRingTable:
    """(Z/n)[x]/(f) for monic ``f`` given by coefficients, leading first."""
    coeffs = [c % n for c in coeffs]
    deg = len(coeffs) - 1
    if n < 1 or deg < 1:
        raise ValueError("need n >= 1 and a polynomial of degree >= 1")
    if coeffs[0] != 1 % n:
        raise ValueError(f"polynomial {coeffs} is not monic")
    _bound(n**deg, max_order)
    elems = list(itertools.product(range(n), repeat=deg))  # low degree first
    idx = {e: i for i, e in enumerate(elems)}
    # x^deg = -(c_1 x^(deg-1) + ... + c_deg)
    tail = [(-c) % n for c in reversed(coeffs[1:])]  # low degree first

    def reduce(poly):
        poly = list(poly)
        for k in range(len(poly) - 1, deg - 1, -1):
            c = poly[k]
            if c:
                poly[k] = 0
                for j, t in enumerate(tail):
                    poly[k - deg + j] = (poly[k - deg + j] + c * t) % n
        return tuple(poly[:deg])

    def times(a, b):
        out = [0] * (2 * deg - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] = (out[i + j] + x * y) % n
        return reduce(out)

    add = tuple(tuple(idx[tuple((x + y) % n for x, y in zip(a, b))] for b in elems) for a in elems)
    mul = tuple(tuple(idx[times(a, b)] for b in elems) for a in elems)
    one = idx[tuple([1 % n] + [0] * (deg - 1))]
    return FiniteRingTable(len(elems), add, mul, idx[(0,) * deg], one, name=poly_name(n, coeffs))


def corner(A: FiniteRingTable, eps: int) -> FiniteRingTable:
    """The ring eps*A with identity eps, for an idempotent eps."""
    if eps not in A._corners:
        A._corners[eps] = _corner(A, eps)
    return A._corners[eps]


def _corner(A: FiniteRingTable, eps: int) -> FiniteRingTable:
    if A.mul[eps][eps] != eps:
        raise ValueError(f"{eps} is not idempotent in {A.name}")
    elems = sorted({A.mul[eps][a] for a in range(A.order)})
    idx = {x: i for i, x in enumerate(elems)}
    add = tuple(tuple(idx[A.add[a][b]] for b in elems) for a in elems)
    mul = tuple(tuple(idx[A.mul[a][b]] for b in elems) for a in elems)
    return FiniteRingTable(len(elems), add, mul, idx[A.zero], idx[eps], name=f"e{eps}*({A.name})")


def char_of_table(R: FiniteRingTable) -> int:
    return R.characteristic


def idempotents(R: FiniteRingTable) -> list[int]:
    return list(R.idempotents)


# ---------------------------------------------------------------------------
# brute-force homomorphisms


def enumerate_homs(B: FiniteRingTable, A: FiniteRingTable, max_order: int = DEFAULT_MAX_ORDER):
    """Yield every unital ring homomorphism ``B -> A`` as a tuple of images.

    Backtracking: fix 1 -> 1, close the partial map under + and *, then pick
    an element outside the closure (a new additive generator) and try every
    image for it. A clash during closure prunes the branch.
    """
    _bound(B.order, max_order)
    _bound(A.order, max_order)

    def close(f: dict, new: list):
        work = list(new)
        while work:
            x = work.pop()
            fx = f[x]
            for y in list(f):
                fy = f[y]
                for z, fz in ((B.add[x][y], A.add[fx][fy]), (B.mul[x][y], A.mul[fx][fy])):
                    have = f.get(z)
                    if have is None:
                        f[z] = fz
                        work.append(z)
                    elif have != fz:
                        return False
        return True

    def search(f: dict):
        if len(f) == B.order:
            yield tuple(f[b] for b in range(B.order))
            return
        g = next(b for b in range(B.order) if b not in f)
        for image in range(A.order):
            h = dict(f)
            h[g] = image
            if close(h, [g]):
                yield from search(h)

    start = {B.zero: A.zero}
    if B.one in start and start[B.one] != A.one:
        return
    start[B.one] = A.one
    if close(start, [B.zero, B.one]):
        yield from search(start)


def count_homs(B: FiniteRingTable, A: FiniteRingTable, max_order: int = DEFAULT_MAX_ORDER) -> int:
    return sum(1 for _ in enumerate_homs(B, A, max_order))


# ---------------------------------------------------------------------------
# symbolic sources into tables


def table_of(s: SolidRingDesc, max_order: int = DEFAULT_MAX_ORDER) -> FiniteRingTable | None:
    if isinstance(s, Zero):
        return ft_cyclic(1, max_order)
    if isinstance(s, Cyclic):
        return ft_cyclic(s.n, max_order)
    return None


def _prime_divisors(n: int) -> list[int]:
    return list(P.factor(n)) if n > 1 else []


def tower_stabilization(s: Tower, char: int) -> int:
    """Smallest n with K_n containing every prime of ``char`` that lies in K."""
    needed = [p for p in _prime_divisors(char) if p in s.fam.K]
    return max((s.fam.K.rank(p) for p in needed), default=0)


def hom_exists_to_table(B: SolidRingDesc, A: FiniteRingTable) -> bool:
    """Existence of a unital map ``B -> A`` from characteristics and idempotents."""
    char = A.characteristic
    if isinstance(B, Zero):
        return A.order == 1
    if isinstance(B, Cyclic):
        return B.n % char == 0
    if isinstance(B, Localized):
        return not any(p in B.J for p in _prime_divisors(char))
    if isinstance(B, Product):
        n = P.unfactor(B.tors)
        for eps in A.idempotents:
            free = A.additive_order(eps)
            tors = A.additive_order(A.add[A.one][A.neg(eps)])
            if n % tors == 0 and not any(p in B.J for p in _prime_divisors(free)):
                return True
        return False
    if isinstance(B, Tower):
        return hom_exists_to_table(solid.tower_stage(B, tower_stabilization(B, char)), A)
    raise TypeError(f"not a solid ring description: {B!r}")


def _localized_count(J, A: FiniteRingTable) -> int:
    # p*1 is a unit for every prime p > |A|: multiplication by p is then a
    # bijection of the additive group, so only p <= |A| need checking.
    for p in J.members_upto(A.order):
        if A.times(p, A.one) not in A.units:
            return 0
    return 1


def _cyclic_count(n: int, A: FiniteRingTable, max_order: int) -> int:
    if n <= max_order:
        return count_homs(ft_cyclic(n, max_order), A, max_order)
    # too big to tabulate: 1 must go to 1, and k -> k*1 is well defined iff n*1 = 0
    return int(A.times(n, A.one) == A.zero)


def hom_count_to_table(B: SolidRingDesc, A: FiniteRingTable, max_order: int = DEFAULT_MAX_ORDER) -> int:
    """Number of unital maps ``B -> A``, counted by enumeration.

    Cyclic sources go through :func:`count_homs`; Z[J^-1] is checked by
    listing the units of ``A``; products sum over idempotent splittings
    ``A = eA x (1-e)A`` using corner-ring tables.
    """
    if isinstance(B, (Zero, Cyclic)):
        return count_homs(table_of(B, max_order), A, max_order)
    if isinstance(B, Localized):
        return _localized_count(B.J, A)
    if isinstance(B, Product):
        n = P.unfactor(B.tors)
        total = 0
        for eps in A.idempotents:
            other = A.add[A.one][A.neg(eps)]
            free = _localized_count(B.J, corner(A, eps))
            if free:
                total += free * _cyclic_count(n, corner(A, other), max_order)
        return total
    if isinstance(B, Tower):
        return hom_count_to_table(solid.tower_stage(B, tower_stabilization(B, A.characteristic)), A, max_order)
    raise TypeError(f"not a solid ring description: {B!r}")


# ---------------------------------------------------------------------------
# solidity audit


@dataclass
class AuditPair:
    source: str
    target: str
    count: int
    verdict: str


@dataclass
class AuditReport:
    pairs: list[AuditPair] = field(default_factory=list)
    violations: list[AuditPair] = field(default_factory=list)
    controls: list[AuditPair] = field(default_factory=list)

    def lines(self) -> list[str]:
        out = [f"{p.source}, {p.target}, {p.count}, {p.verdict}" for p in self.pairs]
        out += [f"{p.source}, {p.target}, {p.count}, {p.verdict}" for p in self.controls]
        return out


def solidity_audit(sources, targets, controls=(), max_order: int = DEFAULT_MAX_ORDER,
                   name=repr) -> AuditReport:
    """Count maps from every source into every target; each count must be <= 1.

    ``controls`` are tables that are known not to be solid; their
    endomorphism counts are reported alongside.
    """
    report = AuditReport()
    for s in sources:
        label = name(s)
        for A in targets:
            c = hom_count_to_table(s, A, max_order)
            pair = AuditPair(label, A.name, c, "ok" if c <= 1 else "VIOLATION")
            report.pairs.append(pair)
            if c > 1:
                report.violations.append(pair)
    for R in controls:
        c = count_homs(R, R, max_order)
        report.controls.append(AuditPair(R.name, R.name, c, "non-solid control" if c > 1 else "control"))
    return report


def table_corpus(max_order: int = 16) -> list[FiniteRingTable]:
    """Every table of order <= max_order from the three constructors.

    Z/n for all n, (Z/n)[x]/(f) for all monic f of degree >= 2, and
    pairwise products of the nontrivial ones.
    """
    cyclics = [ft_cyclic(n, max_order) for n in range(1, max_order + 1)]
    quots = []
    for n in range(2, max_order + 1):
        deg = 2
        while n**deg <= max_order:
            for tail in itertools.product(range(n), repeat=deg):
                quots.append(ft_polyquot(n, (1, *tail), max_order))
            deg += 1
    base = [R for R in cyclics if R.order > 1] + quots
    prods = []
    for i, R in enumerate(base):
        for S in base[i:]:
            if R.order * S.order <= max_order:
                prods.append(ft_product(R, S, max_order))
    return cyclics + quots + prods

