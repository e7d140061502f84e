"""Prime arithmetic and the Boolean algebra of finite/cofinite prime sets."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import islice
from typing import Iterable, Iterator

from sympy import factorint, nextprime, primepi
from sympy import isprime as _isprime

from .errors import ConstraintViolation


@lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    return n >= 2 and bool(_isprime(n))


def factor(n: int) -> dict[int, int]:
    """Prime factorization of ``n >= 1`` as an ordered ``{prime: exponent}``."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"factor expects a positive integer, got {n!r}")
    return dict(sorted(factorint(n).items()))


def unfactor(factors) -> int:
    out = 1
    for p, e in dict(factors).items():
        out *= p**e
    return out


@dataclass(frozen=True)
class PrimeSet:
    """A finite or cofinite set of primes.

    ``basis`` lists the members when ``cofinite`` is false and the excluded
    primes when it is true. Use :func:`finite` / :func:`cofinite` to build
    validated values; the raw constructor trusts its arguments.
    """

    cofinite: bool
    basis: tuple[int, ...] = ()

    def __contains__(self, p: int) -> bool:
        if self.cofinite:
            return is_prime(p) and p not in self.basis
        return p in self.basis

    def is_finite(self) -> bool:
        return not self.cofinite

    def is_empty(self) -> bool:
        return not self.cofinite and not self.basis

    def is_all(self) -> bool:
        return self.cofinite and not self.basis

    def __iter__(self) -> Iterator[int]:
        """Members in increasing order (infinite for cofinite sets)."""
        if not self.cofinite:
            yield from self.basis
            return
        excluded = set(self.basis)
        p = 2
        while True:
            if p not in excluded:
                yield p
            p = int(nextprime(p))

    def take(self, k: int) -> list[int]:
        return list(islice(self, k))

    def members_upto(self, bound: int) -> list[int]:
        out = []
        for p in self:
            if p > bound:
                break
            out.append(p)
        return out

    def rank(self, p: int) -> int:
        """Number of members ``<= p``."""
        if not self.cofinite:
            return sum(1 for b in self.basis if b <= p)
        return int(primepi(p)) - sum(1 for b in self.basis if b <= p)

    def __len__(self):
        if self.cofinite:
            raise TypeError("cofinite prime set has no finite length")
        return len(self.basis)

    # Boolean algebra

    def complement(self) -> PrimeSet:
        return PrimeSet(not self.cofinite, self.basis)

    __invert__ = complement

    def __or__(self, other: PrimeSet) -> PrimeSet:
        a, b = set(self.basis), set(other.basis)
        if self.cofinite and other.cofinite:
            return _mk(True, a & b)
        if self.cofinite:
            return _mk(True, a - b)
        if other.cofinite:
            return _mk(True, b - a)
        return _mk(False, a | b)

    def __and__(self, other: PrimeSet) -> PrimeSet:
        return ~(~self | ~other)

    def __sub__(self, other: PrimeSet) -> PrimeSet:
        return self & ~other

    def __xor__(self, other: PrimeSet) -> PrimeSet:
        return (self - other) | (other - self)

    def issubset(self, other: PrimeSet) -> bool:
        return (self - other).is_empty()

    __le__ = issubset

    def isdisjoint(self, other: PrimeSet) -> bool:
        return (self & other).is_empty()

    def __repr__(self):
        inner = ",".join(map(str, self.basis))
        if self.cofinite:
            return f"P\\{{{inner}}}" if inner else "P"
        return f"{{{inner}}}"


def _mk(cofinite: bool, members: Iterable[int]) -> PrimeSet:
    return PrimeSet(cofinite, tuple(sorted(members)))


def _check_basis(items) -> tuple[int, ...]:
    out = []
    for p in items:
        if not isinstance(p, int) or isinstance(p, bool) or not is_prime(p):
            raise ConstraintViolation(f"{p!r} is not a prime")
        out.append(p)
    if len(set(out)) != len(out):
        raise ConstraintViolation(f"duplicate primes in {out}")
    return tuple(sorted(out))


def finite(items: Iterable[int] = ()) -> PrimeSet:
    return PrimeSet(False, _check_basis(items))


def cofinite(excluded: Iterable[int] = ()) -> PrimeSet:
    return PrimeSet(True, _check_basis(excluded))


EMPTY = PrimeSet(False, ())
ALL = PrimeSet(True, ())


def ps_op(op: str, S: PrimeSet, T: PrimeSet | None = None) -> PrimeSet:
    if op == "complement":
        return ~S
    if T is None:
        raise ValueError(f"{op} needs two operands")
    if op == "union":
        return S | T
    if op == "intersect":
        return S & T
    if op == "difference":
        return S - T
    if op == "symmetric_difference":
        return S ^ T
    raise ValueError(f"unknown prime-set operation {op!r}")


def almost_subset(S: PrimeSet, T: PrimeSet) -> bool:
    """True iff ``S \\ T`` is finite."""
    return (S - T).is_finite()


def almost_equal(S: PrimeSet, T: PrimeSet) -> bool:
    return (S ^ T).is_finite()
