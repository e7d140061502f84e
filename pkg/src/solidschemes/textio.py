"""Text syntax for prime sets, rings, schemes and point sets, plus JSON output.

Grammar (whitespace is ignored around punctuation)::

    primeset := "{}" | "{" nat ("," nat)* "}" | "P" | "P\\" "{" nat ("," nat)* "}"
    ring     := atom (" x " atom)*
    atom     := "0" | "Z" | "Q" | "Z/" nat | "Z[1/" primeset "]"
              | "tower(inv=" primeset ", tors={K=" primeset ", default=" nat (", " nat ":" nat)* "})"
    scheme   := "scheme(q=" 0|1 ", inf=" primeset ", fin=" expspec ", C=" primeset ")"
    expspec  := "{}" | "{" nat ":" nat ("," nat ":" nat)* "}"
              | "{S=" primeset ", default=" nat (", " nat ":" nat)* "}"
    pointset := "pts(Q=" 0|1 ", line=" primeset ", tors=" primeset ")"
    point    := "Q" | "line(" nat ")" | "tors(" nat ")"

Prime lists must be strictly increasing. Parsed values are canonical, and
the printers emit exactly the canonical text, so ``print(parse(t)) == t``
for canonical ``t`` and ``parse(print(v)) == v`` for every value.
"""

from __future__ import annotations

import json
import re
from functools import singledispatch

from . import primes as P
from . import scheme as sch
from . import solid
from .errors import ConstraintViolation, ParseError
from .finring import AuditPair, AuditReport, FiniteRingTable
from .primes import PrimeSet
from .scheme import ClassificationData, ExponentMap
from .solid import Cyclic, Localized, Product, TorsionFamily, Tower, Zero
from .spectrum import (
    CyclicStalk, Generic, Line, LocalAt, PointSet, RatField, Spectrum, Torsion,
)

_TOKEN = re.compile(r"\s*(?:(?P<nat>\d+)|(?P<word>[A-Za-z_]+)|(?P<punct>[{}\[\](),:=/\\]))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = []
        pos = 0
        while True:
            m = _TOKEN.match(text, pos)
            if m is None:
                rest = text[pos:]
                if rest.strip() == "":
                    break
                off = pos + len(rest) - len(rest.lstrip())
                raise self._error(f"unexpected character {text[off]!r}", off)
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.i = 0

    def _where(self, offset: int) -> tuple[int, int]:
        before = self.text[:offset]
        line = before.count("\n") + 1
        col = offset - (before.rfind("\n") + 1) + 1
        return line, col

    def _error(self, msg, offset=None, cls=ParseError):
        if offset is None:
            offset = self.offset()
        line, col = self._where(offset)
        return cls(msg, line, col)

    def offset(self) -> int:
        if self.i < len(self.tokens):
            return self.tokens[self.i][2]
        return len(self.text)

    def peek(self):
        if self.i < len(self.tokens):
            return self.tokens[self.i]
        return (None, None, len(self.text))

    def next(self):
        tok = self.peek()
        if tok[0] is None:
            raise self._error("unexpected end of input")
        self.i += 1
        return tok

    def at(self, value) -> bool:
        return self.peek()[1] == value

    def expect(self, value):
        tok = self.peek()
        if tok[1] != value:
            found = "end of input" if tok[0] is None else repr(tok[1])
            raise self._error(f"expected {value!r}, found {found}")
        self.i += 1
        return tok

    def nat(self) -> tuple[int, int]:
        kind, value, off = self.peek()
        if kind != "nat":
            found = "end of input" if kind is None else repr(value)
            raise self._error(f"expected a number, found {found}")
        self.i += 1
        return int(value), off

    def end(self):
        if self.peek()[0] is not None:
            raise self._error(f"unexpected trailing input {self.peek()[1]!r}")

    # grammar

    def prime_list(self) -> list[int]:
        out = []
        while True:
            p, off = self.nat()
            if not P.is_prime(p):
                raise self._error(f"{p} is not a prime", off)
            if out and p == out[-1]:
                raise self._error(f"duplicate prime {p}", off)
            if out and p < out[-1]:
                raise self._error(f"primes must be listed in increasing order ({p} after {out[-1]})", off)
            out.append(p)
            if not self.at(","):
                return out
            self.next()

    def primeset(self) -> PrimeSet:
        if self.at("P"):
            self.next()
            if not self.at("\\"):
                return P.ALL
            self.next()
            self.expect("{")
            excl = self.prime_list()
            self.expect("}")
            return P.PrimeSet(True, tuple(excl))
        self.expect("{")
        if self.at("}"):
            self.next()
            return P.EMPTY
        members = self.prime_list()
        self.expect("}")
        return P.PrimeSet(False, tuple(members))

    def exponent_pairs(self) -> list[tuple[int, int, int]]:
        """``(, p:e)*`` items; returns (prime, exponent, offset)."""
        out = []
        while self.at(","):
            self.next()
            out.append(self.pair())
        return out

    def pair(self) -> tuple[int, int, int]:
        p, off = self.nat()
        if not P.is_prime(p):
            raise self._error(f"{p} is not a prime", off)
        self.expect(":")
        e, eoff = self.nat()
        if e < 1:
            raise self._error(f"exponent of {p} must be positive", eoff, ConstraintViolation)
        return p, e, off

    def _check_increasing(self, items):
        for (a, _, _), (b, _, off) in zip(items, items[1:]):
            if b == a:
                raise self._error(f"duplicate prime {b}", off)
            if b < a:
                raise self._error(f"primes must be listed in increasing order ({b} after {a})", off)

    def family(self, key: str) -> TorsionFamily:
        self.expect(key)
        self.expect("=")
        K = self.primeset()
        self.expect(",")
        self.expect("default")
        self.expect("=")
        d, doff = self.nat()
        if d < 1:
            raise self._error("default exponent must be positive", doff, ConstraintViolation)
        items = self.exponent_pairs()
        self._check_increasing(items)
        for p, _, off in items:
            if p not in K:
                raise self._error(f"exponent given for {p}, which is outside {print_primeset(K)}",
                                  off, ConstraintViolation)
        return solid.family(K, d, {p: e for p, e, _ in items})

    def atom(self):
        kind, value, off = self.peek()
        if kind == "nat" and value == "0":
            self.next()
            return solid.Zero()
        if value == "Q":
            self.next()
            return solid.Q
        if value == "Z":
            self.next()
            if self.at("/"):
                self.next()
                n, noff = self.nat()
                if n < 1:
                    raise self._error("Z/n needs n >= 1", noff)
                return solid.cyclic(n)
            if self.at("["):
                self.next()
                one, ooff = self.nat()
                if one != 1:
                    raise self._error("expected '1' in Z[1/...]", ooff)
                self.expect("/")
                J = self.primeset()
                self.expect("]")
                return solid.Localized(J)
            return solid.Z
        if value == "tower":
            self.next()
            self.expect("(")
            self.expect("inv")
            self.expect("=")
            J = self.primeset()
            self.expect(",")
            self.expect("tors")
            self.expect("=")
            self.expect("{")
            fam = self.family("K")
            self.expect("}")
            self.expect(")")
            try:
                return solid.canonicalize(Tower(J, fam))
            except ConstraintViolation as exc:
                raise self._error(exc.message, off, ConstraintViolation) from None
        found = "end of input" if kind is None else repr(value)
        raise self._error(f"expected a ring, found {found}")

    def ring(self):
        start = self.offset()
        r = self.atom()
        while self.at("x"):
            self.next()
            r2 = self.atom()
            try:
                r = solid.ring_product(r, r2)
            except ConstraintViolation as exc:
                raise self._error(exc.message, start, ConstraintViolation) from None
        return r

    def flag(self, key: str) -> int:
        self.expect(key)
        self.expect("=")
        v, off = self.nat()
        if v not in (0, 1):
            raise self._error(f"{key} must be 0 or 1", off)
        return v

    def expspec(self) -> TorsionFamily:
        self.expect("{")
        if self.at("}"):
            self.next()
            return TorsionFamily(P.EMPTY)
        if self.at("S"):
            fam = self.family("S")
            self.expect("}")
            return fam
        items = [self.pair()]
        while self.at(","):
            self.next()
            items.append(self.pair())
        self._check_increasing(items)
        self.expect("}")
        return solid.finite_family({p: e for p, e, _ in items})

    def scheme(self) -> ClassificationData:
        start = self.offset()
        self.expect("scheme")
        self.expect("(")
        q = self.flag("q")
        self.expect(",")
        self.expect("inf")
        self.expect("=")
        S_inf = self.primeset()
        self.expect(",")
        self.expect("fin")
        self.expect("=")
        fin = self.expspec()
        self.expect(",")
        self.expect("C")
        self.expect("=")
        C = self.primeset()
        self.expect(")")
        try:
            return sch.validate(ClassificationData(ExponentMap.build(S_inf, fin), q, C))
        except ConstraintViolation as exc:
            raise self._error(exc.message, start, ConstraintViolation) from None

    def pointset(self) -> PointSet:
        self.expect("pts")
        self.expect("(")
        g = self.flag("Q")
        self.expect(",")
        self.expect("line")
        self.expect("=")
        line = self.primeset()
        self.expect(",")
        self.expect("tors")
        self.expect("=")
        tors = self.primeset()
        self.expect(")")
        return PointSet(bool(g), line, tors)

    def point(self):
        if self.at("Q"):
            self.next()
            return Generic()
        kind, value, _ = self.peek()
        if value in ("line", "tors"):
            self.next()
            self.expect("(")
            p, off = self.nat()
            if not P.is_prime(p):
                raise self._error(f"{p} is not a prime", off)
            self.expect(")")
            return Line(p) if value == "line" else Torsion(p)
        found = "end of input" if kind is None else repr(value)
        raise self._error(f"expected a point (Q, line(p) or tors(p)), found {found}")


def _run(text: str, rule: str):
    ps = _Parser(text)
    value = getattr(ps, rule)()
    ps.end()
    return value


def parse_primeset(text: str) -> PrimeSet:
    return _run(text, "primeset")


def parse_ring(text: str):
    return _run(text, "ring")


def parse_scheme(text: str) -> ClassificationData:
    return _run(text, "scheme")


def parse_pointset(text: str) -> PointSet:
    return _run(text, "pointset")


def parse_point(text: str):
    return _run(text, "point")


def parse_expr(text: str):
    """A ring or a scheme, told apart by the leading keyword."""
    if text.lstrip().startswith("scheme"):
        return parse_scheme(text)
    return parse_ring(text)


# ---------------------------------------------------------------------------
# printers


def print_primeset(S: PrimeSet) -> str:
    inner = ",".join(map(str, S.basis))
    if S.cofinite:
        return f"P\\{{{inner}}}" if inner else "P"
    return f"{{{inner}}}"


def _overrides(pairs) -> str:
    return "".join(f", {p}:{e}" for p, e in pairs)


def print_ring(s) -> str:
    if isinstance(s, Zero):
        return "0"
    if isinstance(s, Cyclic):
        return f"Z/{s.n}"
    if isinstance(s, Localized):
        if s.J.is_empty():
            return "Z"
        if s.J.is_all():
            return "Q"
        return f"Z[1/{print_primeset(s.J)}]"
    if isinstance(s, Product):
        return f"{print_ring(Localized(s.J))} x Z/{P.unfactor(s.tors)}"
    if isinstance(s, Tower):
        f = s.fam
        return (f"tower(inv={print_primeset(s.J)}, tors={{K={print_primeset(f.K)}, "
                f"default={f.default_exp}{_overrides(f.overrides)}}})")
    raise TypeError(f"not a ring description: {s!r}")


def print_expspec(fin: TorsionFamily) -> str:
    if not fin.K.cofinite:
        return "{" + ",".join(f"{p}:{e}" for p, e in fin.items()) + "}"
    return f"{{S={print_primeset(fin.K)}, default={fin.default_exp}{_overrides(fin.overrides)}}}"


def print_scheme(d: ClassificationData) -> str:
    return (f"scheme(q={d.q}, inf={print_primeset(d.e.S_inf)}, "
            f"fin={print_expspec(d.e.finite_part)}, C={print_primeset(d.C)})")


def print_pointset(U: PointSet) -> str:
    return (f"pts(Q={int(U.has_generic)}, line={print_primeset(U.line)}, "
            f"tors={print_primeset(U.torsion)})")


def print_point(x) -> str:
    if isinstance(x, Generic):
        return "Q"
    if isinstance(x, Line):
        return f"line({x.p})"
    return f"tors({x.p})"


def print_stalk(st) -> str:
    if isinstance(st, RatField):
        return "Q"
    if isinstance(st, LocalAt):
        return f"Z_({st.p})"
    return f"Z/{st.p}^{st.e}"


# ---------------------------------------------------------------------------
# structured output


@singledispatch
def to_structured(v):
    raise TypeError(f"no structured form for {type(v).__name__}")


@to_structured.register
def _(v: bool):
    return v


@to_structured.register(type(None))
def _(v):
    return None


@to_structured.register
def _(v: list):
    return [to_structured(x) for x in v]


@to_structured.register
def _(v: dict):
    return {"kind": "factorization", "factors": {str(p): e for p, e in v.items()}}


@to_structured.register
def _(v: PrimeSet):
    return {"kind": "primeset", "cofinite": v.cofinite, "basis": list(v.basis),
            "text": print_primeset(v)}


def _factors(pairs):
    return {str(p): e for p, e in pairs}


@to_structured.register
def _(v: TorsionFamily):
    return {"kind": "exponents", "S": to_structured(v.K), "default": v.default_exp,
            "overrides": _factors(v.overrides)}


@to_structured.register
def _(v: Zero):
    return {"kind": "zero", "text": print_ring(v)}


@to_structured.register
def _(v: Cyclic):
    return {"kind": "cyclic", "n": v.n, "factors": _factors(v.factors)}


@to_structured.register
def _(v: Localized):
    return {"kind": "localized", "J": to_structured(v.J), "text": print_ring(v)}


@to_structured.register
def _(v: Product):
    return {"kind": "product", "J": to_structured(v.J), "n": P.unfactor(v.tors),
            "factors": _factors(v.tors), "text": print_ring(v)}


@to_structured.register
def _(v: Tower):
    return {"kind": "tower", "J": to_structured(v.J), "K": to_structured(v.fam.K),
            "default": v.fam.default_exp, "overrides": _factors(v.fam.overrides),
            "text": print_ring(v)}


@to_structured.register
def _(v: ClassificationData):
    return {"kind": "scheme", "q": v.q, "inf": to_structured(v.e.S_inf),
            "fin": to_structured(v.e.finite_part), "C": to_structured(v.C),
            "text": print_scheme(v)}


@to_structured.register
def _(v: PointSet):
    return {"kind": "pointset", "Q": v.has_generic, "line": to_structured(v.line),
            "torsion": to_structured(v.torsion)}


@to_structured.register(Generic)
@to_structured.register(Line)
@to_structured.register(Torsion)
def _(v):
    out = {"kind": "point", "type": type(v).__name__.lower(), "text": print_point(v)}
    if not isinstance(v, Generic):
        out["p"] = v.p
    return out


@to_structured.register(RatField)
@to_structured.register(LocalAt)
@to_structured.register(CyclicStalk)
def _(v):
    out = {"kind": "stalk", "text": print_stalk(v)}
    out.update({k: getattr(v, k) for k in ("p", "e") if hasattr(v, k)})
    return out


@to_structured.register
def _(v: Spectrum):
    return {"kind": "spectrum", "Q": v.has_generic, "line": to_structured(v.line),
            "torsion": to_structured(v.torsion)}


@to_structured.register
def _(v: AuditPair):
    return {"source": v.source, "target": v.target, "count": v.count, "verdict": v.verdict}


@to_structured.register
def _(v: AuditReport):
    return {"kind": "audit", "pairs": to_structured(v.pairs),
            "violations": to_structured(v.violations), "controls": to_structured(v.controls)}


@to_structured.register
def _(v: FiniteRingTable):
    return {"kind": "table", "name": v.name, "order": v.order, "zero": v.zero, "one": v.one,
            "add": [list(r) for r in v.add], "mul": [list(r) for r in v.mul]}


def dumps(v) -> str:
    return json.dumps(to_structured(v), sort_keys=True, separators=(",", ":"))
