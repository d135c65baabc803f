import io
import subprocess
import sys

import pytest

from conftest import PD16, TM16
from streamlab.ca import apply, format_rule, xor_rule
from streamlab.catalog import build_atom, thue_morse
from streamlab.cli import main
from streamlab.expr import (
    ApplyCA, Atom, Cons, Drop, Encode, ExprError, Inv, Mutate, Xor, Zip, build_stream,
    parse_expr,
)
from streamlab.fst import fig2_machine, format_fst


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def xor_file(tmp_path):
    p = tmp_path / "xor.ca"
    p.write_text(format_rule(xor_rule()))
    return str(p)


# expression language

def test_parse_examples():
    assert parse_expr("zip(tm,pd)") == Zip(Atom("tm"), Atom("pd"))
    assert parse_expr("periodic:011101") == Atom("periodic", ("011101",))
    assert parse_expr("drop(3, xor(tm))") == Drop(3, Xor(Atom("tm")))
    assert parse_expr("inv(cons(11, tm))") == Inv(Cons("11", Atom("tm")))
    assert parse_expr("mutate(zeros, 0->1, 3→1, 5=1)") == Mutate(
        Atom("zeros"), ((0, "1"), (3, "1"), (5, "1")))
    assert parse_expr("encode(ABC, periodic:AB)") == Encode("ABC", Atom("periodic", ("AB",)))
    assert parse_expr("applyca(r.ca, tm)") == ApplyCA("r.ca", Atom("tm"))


@pytest.mark.parametrize("text, offset", [
    ("", 0), ("zip(tm pd)", 7), ("nope", 0), ("tm pd", 3), ("foo(tm)", 0),
    ("drop(x, tm)", 5), ("mutate(tm, 1-1)", 11), ("zip(tm,", 7),
])
def test_parse_errors_have_offsets(text, offset):
    with pytest.raises(ExprError) as e:
        parse_expr(text)
    assert e.value.pos == offset


def test_build_stream():
    assert build_stream("mutate(zeros, 0->1)").prefix(4) == "1000"
    assert build_stream("xor(tm)").prefix(15) == PD16[:15]
    assert build_stream("drop(1, tm)").prefix(3) == "110"
    assert build_stream("encode(ABC, periodic:A)").prefix(9) == "100100000"


# subcommands

def test_gen():
    assert run("gen", "tm", "--len", "16") == (0, TM16 + "\n", "")
    assert run("gen", "pd", "--len", "16")[1] == PD16 + "\n"


def test_check():
    code, out, _ = run("check", "periodic:10", "periodic:100100", "--cmax", "100000", "--alpha", "1")
    assert (code, out) == (1, "No\n")
    code, out, _ = run("check", "tau:6", "tau:2", "--cmax", "100000", "--alpha", "1/2")
    assert (code, out) == (0, "Yes\n")


def test_check_is_reproducible():
    argv = ("check", "zeros", "algoctr:1/2", "--cmax", "5000", "--alpha", "1")
    assert run(*argv) == run(*argv)


def test_orbit_ascii():
    code, out, _ = run("orbit", "--eca", "102", "tm", "--width", "15", "--steps", "1", "--ascii")
    assert code == 0
    assert out == TM16[:15] + "\n" + PD16[:15] + "\n"


def test_orbit_files(tmp_path, xor_file):
    out_pbm = tmp_path / "o.pbm"
    code, out, _ = run("orbit", xor_file, "tm", "--width", "4", "--steps", "1", "-o", str(out_pbm))
    assert code == 0 and out == ""
    assert out_pbm.read_bytes() == b"P1\n4 2\n0 1 1 0\n1 0 1 1\n"
    assert run("orbit", "tm", "--width", "4", "--steps", "1")[0] == 2
    assert run("orbit", "--eca", "102", xor_file, "tm", "--width", "4", "--steps", "1")[0] == 2


def test_apply_ca(xor_file):
    assert run("apply-ca", xor_file, "tm", "--len", "15") == (0, PD16[:15] + "\n", "")


def test_apply_fst(tmp_path):
    p = tmp_path / "m.fst"
    p.write_text(format_fst(fig2_machine()))
    code, out, _ = run("apply-fst", str(p), "pd", "--steps", "15")
    assert code == 0 and out == TM16 + "\n"


def test_apply_fst_stall(tmp_path):
    p = tmp_path / "quiet.fst"
    p.write_text("%fst\nalphabet: 01\nstart: q\nq 0 -> q / -\nq 1 -> q / -\n")
    code, _, err = run("apply-fst", str(p), "tm", "--steps", "100")
    assert code == 3 and "stopped" in err


def test_compose(tmp_path, xor_file):
    out = tmp_path / "xx.ca"
    assert run("compose", xor_file, xor_file, "-o", str(out))[0] == 0
    code, text, _ = run("apply-ca", str(out), "tm", "--len", "14")
    twice = apply(xor_rule(), apply(xor_rule(), thue_morse())).prefix(14)
    assert (code, text) == (0, twice + "\n")
    code, printed, _ = run("compose", xor_file, xor_file)
    assert code == 0 and printed == out.read_text()


def test_synth(tmp_path):
    rule = tmp_path / "s.ca"
    code, out, _ = run("synth", "tau:4", "tau:2", "--max-radius", "4", "--horizon", "200",
                       "-o", str(rule))
    assert code == 0 and out.startswith("answer: yes\n")
    code, text, _ = run("apply-ca", str(rule), "tau:4", "--len", "40")
    assert text == build_atom("tau:2").prefix(40) + "\n"
    code, out, _ = run("synth", "tau:2", "tau:4", "--max-radius", "3", "--horizon", "200")
    assert code == 1 and out.count("witness:") == 4


def test_synth_start(tmp_path):
    code, out, _ = run("synth", "mu:1", "mu:2", "--max-radius", "3", "--horizon", "3000",
                       "--start", "200")
    assert code == 0 and "radius: 3" in out


def test_encode():
    code, out, _ = run("encode", "periodic:AB", "--alphabet", "ABC", "--len", "18")
    assert (code, out) == (0, "100100000101100000\n")
    code, out, _ = run("encode", "periodic:AB", "--alphabet", "ABC", "--gamma", "A=11,B=01,C=10",
                       "--len", "9")
    assert out == "111100000\n"
    assert run("encode", "periodic:AB", "--alphabet", "ABC", "--gamma", "A=1")[0] == 2


def test_congruent():
    assert run("congruent", "drop(5,tm)", "tm", "--max-shift", "10", "--horizon", "500") == (
        0, "0 5\n", "")
    assert run("congruent", "zeros", "ones", "--max-shift", "10", "--horizon", "100")[:2] == (
        1, "none\n")


def test_catalog():
    code, out, _ = run("catalog")
    names = [ln.split()[0].split(":")[0] for ln in out.splitlines()]
    assert code == 0 and "tm" in names and "maximal_variant" in names


@pytest.mark.parametrize("argv", [
    (), ("nope",), ("gen",), ("gen", "tm", "--len", "x"), ("gen", "zip(tm"),
    ("gen", "tau:0"), ("check", "tm", "pd", "--cmax", "0"), ("apply-ca", "/no/such.ca", "tm"),
    ("gen", "zip(tm, periodic:ab)"),
])
def test_usage_errors(argv):
    code, out, err = run(*argv)
    assert code == 2 and out == "" and err


def test_ceiling_exit_code(monkeypatch):
    monkeypatch.setenv("STREAMLAB_MAX_PREFIX", "50")
    code, _, err = run("gen", "tm", "--len", "100")
    assert code == 3 and "ceiling" in err


def test_fixture_end_is_a_stall():
    assert run("gen", "sierpinski", "--len", "20")[0] == 3


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "streamlab", "gen", "pd", "--len", "8"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == PD16[:8] + "\n"
    r = subprocess.run([sys.executable, "-m", "streamlab", "bogus"], capture_output=True, text=True)
    assert r.returncode == 2
