"""Command-line front end.

Exit codes: 0 success, 1 parse/usage error, 2 constraint violation,
3 internal invariant breach.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import corpus, finring
from . import primes as P
from . import scheme as sch
from . import solid, spectrum
from . import textio as T
from .errors import ConstraintViolation, InvariantBreach, ParseError
from .scheme import ClassificationData
from .spectrum import Spectrum


class _ArgParser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(f"{self.prog}: {message}")


def _as_scheme(expr) -> ClassificationData:
    return expr if isinstance(expr, ClassificationData) else solid.classification_data(expr)


def _ring(text: str):
    return T.parse_ring(text)


def _bool(v: bool) -> str:
    return "true" if v else "false"


def _spectrum(expr) -> Spectrum:
    if isinstance(expr, ClassificationData):
        return Spectrum(expr.q == 1, expr.e.S_inf, expr.e.finite_part)
    return spectrum.spectrum_of(expr)


def _stalk_lines(sp: Spectrum) -> list[str]:
    out = []
    if sp.has_generic:
        out.append("Q -> Q")
    if not sp.line.is_empty():
        out.append(f"line(p) -> Z_(p) for p in {T.print_primeset(sp.line)}")
    fam = sp.torsion
    if not fam.K.cofinite:
        out += [f"tors({p}) -> Z/{p}^{e}" for p, e in fam.items()]
    else:
        out += [f"tors({p}) -> Z/{p}^{e}" for p, e in fam.overrides]
        rest = fam.K - P.finite([p for p, _ in fam.overrides])
        out.append(f"tors(p) -> Z/p^{fam.default_exp} for p in {T.print_primeset(rest)}")
    return out


# ---------------------------------------------------------------------------
# commands; each returns the value to print


def cmd_normalize(a):
    return _ring(a.ring)


def cmd_classify(a):
    return solid.classification_data(_ring(a.ring))


def cmd_char(a):
    return solid.characteristic(_ring(a.ring))


def cmd_factor(a):
    if a.n < 1:
        raise ConstraintViolation(f"cannot factor {a.n}")
    return P.factor(a.n)


def cmd_primeset(a):
    S = T.parse_primeset(a.S)
    if a.op == "complement":
        return P.ps_op("complement", S)
    if a.T is None:
        raise ParseError(f"primeset {a.op} needs two prime sets")
    Tset = T.parse_primeset(a.T)
    if a.op == "almost_subset":
        return P.almost_subset(S, Tset)
    if a.op == "almost_equal":
        return P.almost_equal(S, Tset)
    return P.ps_op(a.op, S, Tset)


def cmd_spec(a):
    expr = T.parse_expr(a.expr)
    sp = _spectrum(expr)
    if a.json:
        doc = T.to_structured(sp)
        if not a.no_diagram:
            doc["diagram"] = spectrum.render_points(sp.has_generic, sp.line, sp.torsion.K)
        return _Raw(json.dumps(doc, sort_keys=True, separators=(",", ":")))
    lines = [f"points: {T.print_pointset(sp.points)}", "stalks:"]
    lines += ["  " + s for s in _stalk_lines(sp)]
    text = "\n".join(lines)
    if not a.no_diagram:
        if isinstance(expr, ClassificationData):
            text += "\n" + spectrum.render_points(sp.has_generic, sp.line, sp.torsion.K).rstrip("\n")
        else:
            text += "\n" + spectrum.ascii_diagram(expr).rstrip("\n")
    return _Raw(text)


def cmd_stalk(a):
    expr = T.parse_expr(a.expr)
    x = T.parse_point(a.point)
    if isinstance(expr, ClassificationData):
        return sch.stalk_at(expr, x)
    return spectrum.stalk_at(expr, x)


def cmd_open(a):
    expr = T.parse_expr(a.expr)
    U = T.parse_pointset(a.pointset)
    if isinstance(expr, ClassificationData):
        return sch.is_open(expr, U)
    return spectrum.is_open_affine(expr, U)


def cmd_hom(a):
    if a.schemes:
        X = _as_scheme(T.parse_expr(a.source))
        S = _as_scheme(T.parse_expr(a.target))
        return sch.scheme_hom_exists(X, S)
    return solid.ring_hom_exists(_ring(a.source), _ring(a.target))


def cmd_localize(a):
    return solid.localize(_ring(a.ring), T.parse_primeset(a.primeset))


def cmd_union(a):
    return sch.affine_union(_ring(a.a), _ring(a.b))


def cmd_symdiff(a):
    pts = sch.symdiff_points(_ring(a.a), _ring(a.b))
    if a.json:
        return pts
    return _Raw("{" + ", ".join(T.print_point(x) for x in pts) + "}")


def cmd_tower(a):
    if a.stages < 0:
        raise ConstraintViolation("--stages must be nonnegative")
    stages = sch.tower(_as_scheme(T.parse_expr(a.scheme)), a.stages)
    if a.json:
        return stages
    return _Raw("\n".join(T.print_ring(s) for s in stages))


def cmd_iso(a):
    return sch.iso(_as_scheme(T.parse_expr(a.a)), _as_scheme(T.parse_expr(a.b)))


def cmd_affine(a):
    s = sch.is_affine(_as_scheme(T.parse_expr(a.scheme)))
    if s is None and not a.json:
        return _Raw("none")
    return s


def cmd_audit(a):
    rng = random.Random(a.seed)
    sources = corpus.solid_corpus(rng, samples=a.samples)
    targets = finring.table_corpus(a.max_order)
    controls = [finring.ft_polyquot(2, (1, 0, 0))]
    report = finring.solidity_audit(sources, targets, controls, name=T.print_ring)
    if report.violations:
        raise _AuditFailed(report)
    if a.json:
        return report
    lines = report.lines()
    lines.append(f"# sources={len(sources)} targets={len(targets)} pairs={len(report.pairs)} "
                 f"violations={len(report.violations)}")
    return _Raw("\n".join(lines))


class _Raw(str):
    """Already formatted output."""


class _AuditFailed(InvariantBreach):
    def __init__(self, report):
        super().__init__(f"{len(report.violations)} solid sources admit more than one map")
        self.report = report


# command -> (handler, library operations it exposes)
COMMANDS = {
    "normalize": (cmd_normalize, [solid.canonicalize, T.parse_ring, T.print_ring]),
    "classify": (cmd_classify, [solid.classification_data, T.print_scheme]),
    "char": (cmd_char, [solid.characteristic]),
    "factor": (cmd_factor, [P.factor]),
    "primeset": (cmd_primeset, [P.ps_op, P.almost_subset, P.almost_equal, T.parse_primeset]),
    "spec": (cmd_spec, [spectrum.spectrum_of, spectrum.ascii_diagram, sch.points, T.parse_expr]),
    "stalk": (cmd_stalk, [spectrum.stalk_at, sch.stalk_at, T.parse_point]),
    "open": (cmd_open, [spectrum.is_open_affine, sch.is_open, T.parse_pointset]),
    "hom": (cmd_hom, [solid.ring_hom_exists, sch.scheme_hom_exists]),
    "localize": (cmd_localize, [solid.localize]),
    "union": (cmd_union, [sch.affine_union]),
    "symdiff": (cmd_symdiff, [sch.symdiff_points]),
    "tower": (cmd_tower, [sch.tower, T.parse_scheme, sch.validate]),
    "iso": (cmd_iso, [sch.iso]),
    "affine": (cmd_affine, [sch.is_affine]),
    "audit": (cmd_audit, [finring.solidity_audit, finring.count_homs, finring.hom_exists_to_table,
                          finring.hom_count_to_table, finring.ft_cyclic, finring.ft_product,
                          finring.ft_polyquot, finring.char_of_table, finring.idempotents]),
}


def build_parser() -> argparse.ArgumentParser:
    ap = _ArgParser(prog="solidschemes", description=__doc__.splitlines()[0])
    ap.add_argument("--json", action="store_true", help="emit machine-readable JSON")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_ArgParser)

    def add(name, help, *args):
        p = sub.add_parser(name, help=help)
        for arg in args:
            p.add_argument(arg)
        p.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        return p

    add("normalize", "print the canonical form of a ring", "ring")
    add("classify", "classification data (e, q, C) of Spec of a ring", "ring")
    add("char", "characteristic of a ring", "ring")
    p = add("factor", "prime factorization")
    p.add_argument("n", type=int)
    p = add("primeset", "operate on prime sets")
    p.add_argument("op", choices=["union", "intersect", "complement", "difference",
                                  "symmetric_difference", "almost_subset", "almost_equal"])
    p.add_argument("S")
    p.add_argument("T", nargs="?")
    p = add("spec", "points, stalks and picture of a ring or scheme", "expr")
    p.add_argument("--no-diagram", action="store_true")
    add("stalk", "stalk at a point (Q, line(p), tors(p))", "expr", "point")
    add("open", "is a point set open", "expr", "pointset")
    p = add("hom", "does a map exist (rings: source first)", "source", "target")
    p.add_argument("--schemes", action="store_true",
                   help="geometric direction: morphism of schemes source -> target")
    add("localize", "invert a set of primes", "ring", "primeset")
    add("union", "affine chart covering two charts", "a", "b")
    add("symdiff", "points in exactly one of two charts", "a", "b")
    p = add("tower", "chain of affine charts exhausting a scheme", "scheme")
    p.add_argument("--stages", type=int, required=True)
    add("iso", "are two schemes isomorphic", "a", "b")
    add("affine", "the solid ring of an affine scheme, or none", "scheme")
    p = add("audit", "brute-force solidity audit against finite rings")
    p.add_argument("--max-order", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=200)
    return ap


def render(value, as_json: bool) -> str:
    if isinstance(value, _Raw):
        return str(value)
    if as_json:
        return T.dumps(value)
    if isinstance(value, bool):
        return _bool(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, dict):
        return "{" + ",".join(f"{p}:{e}" for p, e in value.items()) + "}"
    if isinstance(value, P.PrimeSet):
        return T.print_primeset(value)
    if isinstance(value, ClassificationData):
        return T.print_scheme(value)
    if isinstance(value, (spectrum.RatField, spectrum.LocalAt, spectrum.CyclicStalk)):
        return T.print_stalk(value)
    return T.print_ring(value)


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        handler = COMMANDS[args.command][0]
        value = handler(args)
        print(render(value, args.json), file=stdout)
        return 0
    except _AuditFailed as exc:
        for pair in exc.report.violations:
            print(f"{pair.source}, {pair.target}, {pair.count}, {pair.verdict}", file=stdout)
        print(f"error: {exc}", file=stderr)
        return 3
    except ParseError as exc:
        print(f"parse error: {exc}", file=stderr)
        return 1
    except ConstraintViolation as exc:
        print(f"constraint violation: {exc}", file=stderr)
        return 2
    except InvariantBreach as exc:
        print(f"internal invariant breach: {exc}", file=stderr)
        return 3


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
