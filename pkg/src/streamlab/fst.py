"""Finite-state transducers over streams.

A transducer reads one letter at a time and writes a finite (possibly empty)
word per step. Transitions are keyed by (state, letter).
"""

from __future__ import annotations

from typing import Callable, Hashable, Mapping

from .ca import LocalRule
from .streams import BINARY, BOUNDARY, Alphabet, AlphabetError, Stream, StreamError

__all__ = [
    "FstError", "StallError", "Fst", "apply_fst", "compile_ca_to_fst",
    "fig1_machine", "fig2_machine", "fig3_machine",
    "parse_fst", "format_fst", "read_fst",
]

State = Hashable


class FstError(ValueError):
    pass


class StallError(StreamError):
    """Output stayed empty for too long; the image is probably finite."""


class Fst:
    """A transducer with total transition and output maps.

    `step(state, letter)` returns (next state, output word). Table-backed
    machines also keep `trans` and `out` for serialization.
    """

    def __init__(self, alphabet: Alphabet, start: State,
                 step: Callable[[State, str], tuple[State, str]],
                 n_states: int, max_out: int, name: str | None = None):
        self.alphabet = alphabet
        self.start = start
        self.step = step
        self.n_states = n_states
        self.max_out = max_out
        self.name = name
        self.trans: dict[tuple[State, str], State] | None = None
        self.out: dict[tuple[State, str], str] | None = None

    @classmethod
    def from_table(cls, alphabet: Alphabet, start: State,
                   trans: Mapping[tuple[State, str], State],
                   out: Mapping[tuple[State, str], str],
                   name: str | None = None) -> "Fst":
        states = {start} | {q for q, _ in trans} | set(trans.values())
        for q in states:
            for a in alphabet:
                if (q, a) not in trans or (q, a) not in out:
                    raise FstError(f"missing transition for state {q!r} on {a!r}")
        for w in out.values():
            alphabet.check_word(w)
        trans, out = dict(trans), dict(out)
        m = cls(alphabet, start, lambda q, a: (trans[q, a], out[q, a]),
                len(states), max((len(w) for w in out.values()), default=0), name)
        m.trans, m.out = trans, out
        return m

    def stall_bound(self) -> int:
        return 4 * self.n_states * (1 + self.max_out)

    def __repr__(self) -> str:
        return f"<Fst {self.name or '?'} with {self.n_states} states>"


def apply_fst(m: Fst, s: Stream, max_steps: int) -> str:
    """Feed max_steps letters of s through m and return everything written."""
    if max_steps < 1:
        raise FstError("max_steps must be at least 1")
    if m.alphabet != s.alphabet:
        raise AlphabetError("transducer and stream alphabets differ")
    bound = m.stall_bound()
    q = m.start
    parts = []
    silent = 0
    for i in range(max_steps):
        q, w = m.step(q, s.letter_at(i))
        if w:
            parts.append(w)
            silent = 0
        else:
            silent += 1
            if silent >= bound:
                raise StallError(f"no output for {silent} steps (at input index {i})")
    return "".join(parts)


def compile_ca_to_fst(rule: LocalRule) -> Fst:
    """A transducer remembering the last 2N letters read.

    It writes nothing for the first N letters and then one letter per step,
    reproducing the cellular automaton's image. States are created lazily.
    """
    n = rule.radius
    size = len(rule.alphabet) + 1

    def step(q: str, a: str) -> tuple[str, str]:
        window = q + a
        nxt = window[1:] if n else ""
        if window.count(BOUNDARY) > n:
            return nxt, ""
        return nxt, rule(window)
    return Fst(rule.alphabet, BOUNDARY * (2 * n), step, size ** (2 * n), 1,
               f"fst({rule.name})")


def _binary_table(edges: list[tuple[str, str, str, str]], start: str, name: str) -> Fst:
    trans, out = {}, {}
    for q, a, r, w in edges:
        trans[q, a] = r
        out[q, a] = w
    return Fst.from_table(BINARY, start, trans, out, name)


def fig1_machine() -> Fst:
    """Keeps the even positions of its input: zip(a, b) -> a."""
    return _binary_table([
        ("q0", "0", "q1", "0"), ("q0", "1", "q1", "1"),
        ("q1", "0", "q0", ""), ("q1", "1", "q0", ""),
    ], "q0", "fig1")


def fig2_machine() -> Fst:
    """Period-doubling word to Thue-Morse word."""
    return _binary_table([
        ("q0", "0", "q1", "00"), ("q0", "1", "q2", "01"),
        ("q1", "0", "q1", "0"), ("q1", "1", "q2", "1"),
        ("q2", "0", "q2", "1"), ("q2", "1", "q1", "0"),
    ], "q0", "fig2")


def fig3_machine() -> Fst:
    """Swaps each payload letter after a 1 with the previous payload."""
    return _binary_table([
        ("q0", "0", "q0", "0"), ("q0", "1", "q2", "1"),
        ("q2", "0", "q0", "0"), ("q2", "1", "q1", "0"),
        ("q1", "0", "q1", "0"), ("q1", "1", "q3", "1"),
        ("q3", "0", "q0", "1"), ("q3", "1", "q1", "1"),
    ], "q0", "fig3")


# file format

def parse_fst(text: str) -> Fst:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if len(lines) < 3 or lines[0] != "%fst":
        raise FstError("an FST file starts with %fst, alphabet: and start:")
    alphabet = Alphabet(_field(lines[1], "alphabet"))
    start = _field(lines[2], "start")
    trans, out = {}, {}
    for ln in lines[3:]:
        left, sep, right = ln.partition("->")
        if not sep:
            raise FstError(f"bad transition line {ln!r}")
        lparts = left.split()
        target, slash, word = right.partition("/")
        if len(lparts) != 2 or not slash:
            raise FstError(f"expected '<state> <letter> -> <state> / <output>', got {ln!r}")
        q, a = lparts
        word = word.strip()
        if a not in alphabet:
            raise FstError(f"letter {a!r} not in alphabet")
        if (q, a) in trans:
            raise FstError(f"duplicate transition for {q} {a}")
        trans[q, a] = target.strip()
        out[q, a] = "" if word == "-" else word
    return Fst.from_table(alphabet, start, trans, out)


def _field(line: str, key: str) -> str:
    k, sep, v = line.partition(":")
    if not sep or k.strip() != key:
        raise FstError(f"expected '{key}: ...', got {line!r}")
    return v.strip()


def format_fst(m: Fst) -> str:
    if m.trans is None or m.out is None:
        raise FstError("only table-backed transducers can be written out")
    lines = ["%fst", f"alphabet: {m.alphabet.letters}", f"start: {m.start}"]
    for (q, a), r in m.trans.items():
        lines.append(f"{q} {a} -> {r} / {m.out[q, a] or '-'}")
    return "\n".join(lines) + "\n"


def read_fst(path: str) -> Fst:
    with open(path, encoding="utf-8") as fh:
        return parse_fst(fh.read())
