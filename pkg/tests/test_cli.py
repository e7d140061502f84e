import io
import json
import subprocess
import sys

import pytest

from solidschemes import cli, finring, primes, scheme, solid, spectrum, textio


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("argv, expected", [
    (["hom", "Z/12", "Z/4"], "true"),
    (["hom", "Z/4", "Z/12"], "false"),
    (["union", "Z[1/{2,3}] x Z/4", "Z[1/{2,5}] x Z/4"], "Z[1/{2}] x Z/4"),
    (["normalize", "Z/1"], "0"),
    (["normalize", "Z[1/P]"], "Q"),
    (["classify", "Z/12"], "scheme(q=0, inf={}, fin={2:2,3:1}, C={})"),
    (["char", "Z/12"], "12"),
    (["factor", "360"], "{2:3,3:2,5:1}"),
    (["primeset", "symmetric_difference", r"P\{2,3}", r"P\{3,5}"], "{2,5}"),
    (["primeset", "almost_subset", r"P\{2}", "{3}"], "false"),
    (["stalk", "Z/12", "tors(2)"], "Z/2^2"),
    (["stalk", "Z[1/{2}]", "line(3)"], "Z_(3)"),
    (["open", "Z[1/{2}]", r"pts(Q=1, line=P\{2,3,5}, tors={})"], "true"),
    (["open", "Z[1/{2}]", "pts(Q=0, line={3,5}, tors={})"], "false"),
    (["localize", "Z/12", "{2}"], "Z/3"),
    (["symdiff", "Z[1/{2}]", "Z[1/{3}]"], "{line(2), line(3)}"),
    (["tower", "scheme(q=1, inf=P, fin={}, C={})", "--stages", "2"], "Q\nZ[1/P\\{2}]\nZ[1/P\\{2,3}]"),
    (["tower", "scheme(q=0, inf={}, fin={2:1,3:1,5:1}, C={})", "--stages", "2"], "Z/2\nZ/6\nZ/30"),
    (["iso", r"scheme(q=1, inf=P, fin={}, C=P\{2})", r"scheme(q=1, inf=P, fin={}, C=P\{5})"], "true"),
    (["affine", "scheme(q=1, inf=P, fin={}, C={})"], "none"),
    (["affine", "scheme(q=0, inf={}, fin={2:2,3:1}, C={})"], "Z/12"),
    (["hom", "--schemes", "Z", "scheme(q=1, inf=P, fin={}, C={})"], "false"),
])
def test_examples(argv, expected):
    code, out, err = run(*argv)
    assert (code, out.rstrip("\n")) == (0, expected), err


def test_spec_includes_diagram_unless_disabled():
    _, out, _ = run("spec", "Z/6")
    assert out.endswith("  *    *\n (2)  (3)\n")
    _, out, _ = run("spec", "Z/6", "--no-diagram")
    assert "*" not in out and out.startswith("points: pts(Q=0, line={}, tors={2,3})")


def test_json_output():
    _, out, _ = run("--json", "normalize", "Z/12")
    assert json.loads(out) == {"kind": "cyclic", "n": 12, "factors": {"2": 2, "3": 1}}
    _, out, _ = run("hom", "Z/12", "Z/4", "--json")
    assert out.strip() == "true"


@pytest.mark.parametrize("argv, code", [
    (["normalize", "Z/"], 1),
    (["frobnicate"], 1),
    (["tower", "scheme(q=1, inf=P, fin={}, C=P)"], 1),
    (["normalize", "Z[1/{2}] x Z/9"], 2),
    (["stalk", "Z/12", "tors(5)"], 2),
    (["union", "Z[1/{3}] x Z/4", "Z[1/{2}]"], 2),
    (["factor", "0"], 2),
    (["symdiff", "Z[1/{2}]", "Z[1/P]"], 3),
])
def test_exit_codes(argv, code):
    got, out, err = run(*argv)
    assert got == code
    assert err and not out


def test_audit_is_deterministic():
    a = run("audit", "--max-order", "6", "--seed", "4", "--samples", "20")
    b = run("audit", "--max-order", "6", "--seed", "4", "--samples", "20")
    assert a == b and a[0] == 0
    assert a[1].splitlines()[-1].endswith("violations=0")


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "solidschemes", "hom", "Z/12", "Z/4"],
                          capture_output=True, text=True)
    assert (proc.returncode, proc.stdout) == (0, "true\n")


LIBRARY_OPS = [
    primes.factor, primes.ps_op, primes.almost_subset, primes.almost_equal,
    solid.canonicalize, solid.classification_data, solid.localize, solid.ring_hom_exists,
    solid.characteristic,
    spectrum.spectrum_of, spectrum.stalk_at, spectrum.is_open_affine, spectrum.ascii_diagram,
    scheme.validate, scheme.points, scheme.stalk_at, scheme.is_open, scheme.iso, scheme.is_affine,
    scheme.scheme_hom_exists, scheme.symdiff_points, scheme.affine_union, scheme.tower,
    finring.ft_cyclic, finring.ft_product, finring.ft_polyquot, finring.count_homs,
    finring.char_of_table, finring.idempotents, finring.hom_exists_to_table, finring.solidity_audit,
    textio.parse_ring, textio.print_ring, textio.parse_scheme, textio.print_scheme,
]


def test_every_operation_reachable_through_exactly_one_command():
    for op in LIBRARY_OPS:
        owners = [name for name, (_, ops) in cli.COMMANDS.items() if op in ops]
        assert len(owners) == 1, (op.__qualname__, owners)
    parser_cmds = set(cli.build_parser()._subparsers._group_actions[0].choices)
    assert parser_cmds == set(cli.COMMANDS)
