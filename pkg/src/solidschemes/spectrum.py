"""Points, stalks and open sets of Spec of a solid ring."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Union

from . import primes as P
from . import solid
from .errors import NotAPoint, NotASubset
from .primes import PrimeSet
from .solid import Cyclic, Localized, Product, SolidRingDesc, TorsionFamily, Tower, Zero


@dataclass(frozen=True)
class Generic:
    pass


@dataclass(frozen=True)
class Line:
    p: int


@dataclass(frozen=True)
class Torsion:
    p: int


SpecPoint = Union[Generic, Line, Torsion]


@dataclass(frozen=True)
class RatField:
    pass


@dataclass(frozen=True)
class LocalAt:
    p: int


@dataclass(frozen=True)
class CyclicStalk:
    p: int
    e: int


Stalk = Union[RatField, LocalAt, CyclicStalk]


@dataclass(frozen=True)
class PointSet:
    has_generic: bool = False
    line: PrimeSet = P.EMPTY
    torsion: PrimeSet = P.EMPTY

    def __or__(self, other: PointSet) -> PointSet:
        return PointSet(self.has_generic or other.has_generic,
                        self.line | other.line, self.torsion | other.torsion)

    def __and__(self, other: PointSet) -> PointSet:
        return PointSet(self.has_generic and other.has_generic,
                        self.line & other.line, self.torsion & other.torsion)

    def __sub__(self, other: PointSet) -> PointSet:
        return PointSet(self.has_generic and not other.has_generic,
                        self.line - other.line, self.torsion - other.torsion)

    def is_empty(self) -> bool:
        return not self.has_generic and self.line.is_empty() and self.torsion.is_empty()

    def is_finite(self) -> bool:
        return self.line.is_finite() and self.torsion.is_finite()

    def __le__(self, other: PointSet) -> bool:
        return (self - other).is_empty()

    def __contains__(self, x: SpecPoint) -> bool:
        if isinstance(x, Generic):
            return self.has_generic
        if isinstance(x, Line):
            return x.p in self.line
        return x.p in self.torsion


EMPTY_POINTS = PointSet()


def check_subset(U: PointSet, space: PointSet) -> None:
    extra = U - space
    if not extra.is_empty():
        raise NotASubset(f"{extra!r} are not points of the space")


class Spectrum(NamedTuple):
    has_generic: bool
    line: PrimeSet
    torsion: TorsionFamily

    @property
    def points(self) -> PointSet:
        return PointSet(self.has_generic, self.line, self.torsion.K)


def spectrum_of(s: SolidRingDesc) -> Spectrum:
    J = solid.inverted_part(s)
    tors = solid.torsion_of(s)
    if J is None:
        return Spectrum(False, P.EMPTY, tors)
    return Spectrum(True, ~J, tors)


def stalk_at(s: SolidRingDesc, x: SpecPoint) -> Stalk:
    sp = spectrum_of(s)
    if x not in sp.points:
        raise NotAPoint(f"{x!r} is not a point of Spec {s!r}")
    if isinstance(x, Generic):
        return RatField()
    if isinstance(x, Line):
        return LocalAt(x.p)
    return CyclicStalk(x.p, sp.torsion.exponent(x.p))


def is_open_affine(s: SolidRingDesc, U: PointSet) -> bool:
    """Open-set test for Spec ``s`` by ring type.

    Discrete for Z/n; cofinite-through-the-generic-point otherwise, with
    any set of torsion points open on its own.
    """
    sp = spectrum_of(s)
    check_subset(U, sp.points)
    if isinstance(s, (Zero, Cyclic)):
        return True
    if not U.has_generic:
        return U.line.is_empty()
    if isinstance(s, (Localized, Product)):
        return (sp.line - U.line).is_finite()
    if isinstance(s, Tower):
        return (sp.points - U).is_finite()
    raise TypeError(f"not a solid ring description: {s!r}")


# ---------------------------------------------------------------------------
# pictures

PREVIEW = 4


def _shown(S: PrimeSet, preview: int) -> list[int]:
    return list(S.basis) if not S.cofinite else S.take(preview)


def _cell(label: str) -> tuple[int, str, str]:
    w = len(label) + 2
    left = (w - 1) // 2
    return w, left * " ", (w - 1 - left) * " "


def render_points(has_generic: bool, line: PrimeSet, torsion: PrimeSet, preview: int = PREVIEW) -> str:
    """Line points sit on a horizontal rule, torsion points are raised above it.

    Infinite components show their first ``preview`` members and an ellipsis.
    Without a generic point there is no rule: just dots labelled underneath.
    """
    if not has_generic and line.is_empty() and torsion.is_empty():
        return "(empty spectrum)\n"
    cols = sorted([(p, False) for p in _shown(line, preview)]
                  + [(p, True) for p in _shown(torsion, preview)])
    if not has_generic:
        dots, labels = [], []
        for p, _ in cols:
            w, left, right = _cell(f"({p})")
            dots.append(left + "*" + right)
            labels.append(f"({p})".center(w))
        if torsion.cofinite:
            dots.append(" ...")
        return "\n".join(["".join(dots).rstrip(), "".join(labels).rstrip()]) + "\n"

    # the rule, starting at (0), stands for the generic point
    top, raised, rule, below = ["     "], ["     "], ["(0)--"], ["     "]
    for p, is_torsion in cols:
        label = f"({p})"
        w, left, right = _cell(label)
        if is_torsion:
            top.append(label.center(w))
            raised.append(left + "*" + right)
            rule.append("-" * w)
            below.append(" " * w)
        else:
            top.append(" " * w)
            raised.append(" " * w)
            rule.append(left.replace(" ", "-") + "*" + right.replace(" ", "-"))
            below.append(label.center(w))
    if line.cofinite or torsion.cofinite:
        raised.append(" ..." if torsion.cofinite else "")
        rule.append("--...")
        below.append(" ..." if line.cofinite else "")
    rows = ["".join(r).rstrip() for r in (top, raised, rule, below)]
    return "\n".join(r for r in rows if r) + "\n"


def ascii_diagram(s: SolidRingDesc, preview: int = PREVIEW) -> str:
    sp = spectrum_of(s)
    return render_points(sp.has_generic, sp.line, sp.torsion.K, preview)
