"""Command-line interface.

Exit codes: 0 success or yes, 1 negative verdict, 2 usage or parse error,
3 stall or index ceiling exceeded.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Sequence

from . import catalog
from .ca import (
    RuleError, apply, compose, eca_rule, format_rule, read_rule, write_rule,
)
from .codec import Codec, encode, parse_gamma
from .expr import ExprError, build_stream
from .fst import FstError, StallError, apply_fst, read_fst
from .orbit import orbit, to_ascii, to_pbm
from .reducer import algorithm1, congruent, format_verdict, synthesize
from .streams import Alphabet, AlphabetError, IndexCeilingError, StreamError

__all__ = ["main", "build_parser"]

OK, NEGATIVE, USAGE, STALL = 0, 1, 2, 3


def _cmd_gen(a, out):
    out.write(build_stream(a.expr).prefix(a.len) + "\n")
    return OK


def _cmd_apply_ca(a, out):
    rule = read_rule(a.rule)
    out.write(apply(rule, build_stream(a.expr)).prefix(a.len) + "\n")
    return OK


def _cmd_apply_fst(a, out):
    m = read_fst(a.fst)
    out.write(apply_fst(m, build_stream(a.expr), a.steps) + "\n")
    return OK


def _cmd_compose(a, out):
    r = compose(read_rule(a.r1), read_rule(a.r2))
    if r.radius > 4:
        raise RuleError("composed radius exceeds 4; the table would be too large to write")
    text = format_rule(r, windows=[w for w, _ in r.table_entries()])
    if a.output:
        with open(a.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return OK


def _cmd_check(a, out):
    yes = algorithm1(build_stream(a.src), build_stream(a.dst), a.cmax, Fraction(a.alpha))
    out.write(("Yes" if yes else "No") + "\n")
    return OK if yes else NEGATIVE


def _cmd_synth(a, out):
    v = synthesize(build_stream(a.src), build_stream(a.dst), a.max_radius, a.horizon, a.start)
    out.write(format_verdict(v))
    if v.answer and a.output:
        write_rule(v.rule, a.output)
    return OK if v.answer else NEGATIVE


def _cmd_orbit(a, out):
    if a.eca is not None:
        if len(a.args) != 1:
            raise _Usage("with --eca give exactly one stream expression")
        rule, expr = eca_rule(a.eca), a.args[0]
    else:
        if len(a.args) != 2:
            raise _Usage("give a rule file and a stream expression, or --eca n")
        rule, expr = read_rule(a.args[0]), a.args[1]
    o = orbit(rule, build_stream(expr), a.width, a.steps)
    if a.output:
        with open(a.output, "wb") as fh:
            fh.write(to_pbm(o))
    if a.ascii:
        out.write(to_ascii(o))
    elif not a.output:
        out.write(to_pbm(o).decode("ascii"))
    return OK


def _cmd_encode(a, out):
    gamma = parse_gamma(a.gamma) if a.gamma else None
    c = Codec(Alphabet(a.alphabet), gamma)
    out.write(encode(c, build_stream(a.expr)).prefix(a.len) + "\n")
    return OK


def _cmd_congruent(a, out):
    hit = congruent(build_stream(a.e1), build_stream(a.e2), a.max_shift, a.horizon)
    if hit is None:
        out.write("none\n")
        return NEGATIVE
    out.write(f"{hit[0]} {hit[1]}\n")
    return OK


def _cmd_catalog(a, out):
    for e in catalog.CATALOG.values():
        sig = f"{e.name}:{e.params}" if e.params else e.name
        out.write(f"{sig:<40} {e.doc}\n")
    return OK


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="streamlab", description="Cellular-automaton reducibility of streams.")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="print a prefix of a stream")
    g.add_argument("expr")
    g.add_argument("--len", type=int, default=64)
    g.set_defaults(run=_cmd_gen)

    g = sub.add_parser("apply-ca", help="apply a rule file to a stream")
    g.add_argument("rule")
    g.add_argument("expr")
    g.add_argument("--len", type=int, default=64)
    g.set_defaults(run=_cmd_apply_ca)

    g = sub.add_parser("apply-fst", help="run a transducer file on a stream")
    g.add_argument("fst")
    g.add_argument("expr")
    g.add_argument("--steps", type=int, default=64)
    g.set_defaults(run=_cmd_apply_fst)

    g = sub.add_parser("compose", help="compose two rule files (first r1, then r2)")
    g.add_argument("r1")
    g.add_argument("r2")
    g.add_argument("-o", "--output")
    g.set_defaults(run=_cmd_compose)

    g = sub.add_parser("check", help="budgeted reducibility estimate (Yes/No)")
    g.add_argument("src")
    g.add_argument("dst")
    g.add_argument("--cmax", type=int, required=True)
    g.add_argument("--alpha", default="1", help="positive rational, e.g. 1 or 3/2")
    g.set_defaults(run=_cmd_check)

    g = sub.add_parser("synth", help="synthesize a rule or report conflict witnesses")
    g.add_argument("src")
    g.add_argument("dst")
    g.add_argument("--max-radius", type=int, required=True)
    g.add_argument("--horizon", type=int, required=True)
    g.add_argument("--start", type=int, default=0, help="ignore indices below this")
    g.add_argument("-o", "--output", help="write the rule file here on success")
    g.set_defaults(run=_cmd_synth)

    g = sub.add_parser("orbit", help="space-time diagram as PBM")
    g.add_argument("args", nargs="+", metavar="[rule.ca] expr")
    g.add_argument("--eca", type=int)
    g.add_argument("--width", type=int, required=True)
    g.add_argument("--steps", type=int, required=True)
    g.add_argument("-o", "--output")
    g.add_argument("--ascii", action="store_true")
    g.set_defaults(run=_cmd_orbit)

    g = sub.add_parser("encode", help="binary block encoding of a stream")
    g.add_argument("expr")
    g.add_argument("--alphabet", required=True)
    g.add_argument("--gamma", help="codewords, e.g. A=00,B=01,C=10")
    g.add_argument("--len", type=int, default=64)
    g.set_defaults(run=_cmd_encode)

    g = sub.add_parser("congruent", help="find shifts making two streams agree")
    g.add_argument("e1")
    g.add_argument("e2")
    g.add_argument("--max-shift", type=int, required=True)
    g.add_argument("--horizon", type=int, required=True)
    g.set_defaults(run=_cmd_congruent)

    g = sub.add_parser("catalog", help="list named streams")
    g.set_defaults(run=_cmd_catalog)
    return p


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        return args.run(args, out)
    except _Usage as e:
        err.write(f"usage error: {e}\n")
        return USAGE
    except (StallError, IndexCeilingError) as e:
        err.write(f"stopped: {e}\n")
        return STALL
    except (ExprError, RuleError, FstError, AlphabetError, catalog.CatalogError,
            ValueError, OSError) as e:
        err.write(f"error: {e}\n")
        return USAGE
    except StreamError as e:
        err.write(f"stopped: {e}\n")
        return STALL


if __name__ == "__main__":
    sys.exit(main())
