"""Two relaxations of cellular-automaton reduction.

Hybrid rules cycle through K local rules by output position: position i
uses rule number (i mod K) + 1, i.e. index i mod K of the list.
Finite-word rules emit a word (possibly empty) per position and concatenate.
"""

from __future__ import annotations

from typing import Callable, Sequence

from .ca import LocalRule, RuleError, _arrow, _field
from .fst import StallError
from .streams import BOUNDARY, WILDCARD, Alphabet, AlphabetError, Stream

__all__ = [
    "HybridRule", "apply_hybrid", "compose_hybrid",
    "FiniteWordRule", "apply_fword",
    "parse_hybrid", "format_hybrid", "read_hybrid",
    "parse_fword", "format_fword", "read_fword",
]


class HybridRule:
    def __init__(self, rules: Sequence[LocalRule], name: str | None = None):
        if not rules:
            raise RuleError("a hybrid rule needs at least one phase")
        alphabet = rules[0].alphabet
        if any(r.alphabet != alphabet for r in rules):
            raise AlphabetError("all phases must share one alphabet")
        self.alphabet = alphabet
        self.radius = max(r.radius for r in rules)
        self.rules = list(rules)
        self.name = name

    @property
    def phases(self) -> int:
        return len(self.rules)

    def eval(self, i: int, window: str) -> str:
        """Rule for output position i on a window of this rule's radius."""
        r = self.rules[i % len(self.rules)]
        cut = self.radius - r.radius
        return r(window[cut:len(window) - cut])

    def __repr__(self) -> str:
        return f"<HybridRule N={self.radius} K={self.phases}>"


def apply_hybrid(h: HybridRule, s: Stream) -> Stream:
    if h.alphabet != s.alphabet:
        raise AlphabetError("rule and stream alphabets differ")
    n = h.radius
    return Stream.from_function(h.alphabet, lambda i: h.eval(i, s.window(i, n)),
                                f"hybrid({s.name})")


def compose_hybrid(h1: HybridRule, h2: HybridRule) -> HybridRule:
    """h1 then h2 as one hybrid rule with K1*K2 phases and radius N1+N2."""
    if h1.alphabet != h2.alphabet:
        raise AlphabetError("cannot compose rules over different alphabets")
    n1, n2 = h1.radius, h2.radius
    k = h1.phases * h2.phases
    w1 = 2 * n1 + 1

    def phase(p: int) -> LocalRule:
        def fn(x: str) -> str:
            mid = []
            for j in range(2 * n2 + 1):
                if x[n1 + j] == BOUNDARY:
                    mid.append(BOUNDARY)
                else:
                    mid.append(h1.eval(p - n2 + j, x[j:j + w1]))
            return h2.eval(p, "".join(mid))
        return LocalRule(h1.alphabet, n1 + n2, fn, name=f"phase{p}")
    return HybridRule([phase(p) for p in range(k)], "composed")


class FiniteWordRule:
    """Local rule whose output is a word over the alphabet."""

    def __init__(self, alphabet: Alphabet, radius: int, fn: Callable[[str], str],
                 name: str | None = None):
        if radius < 0:
            raise RuleError("radius must be non-negative")
        self.alphabet = alphabet
        self.radius = radius
        self._fn = fn
        self.name = name

    def __call__(self, window: str) -> str:
        out = self._fn(window)
        self.alphabet.check_word(out)
        return out

    @classmethod
    def from_table(cls, alphabet: Alphabet, radius: int,
                   table: Sequence[tuple[str, str]], default: str) -> "FiniteWordRule":
        width = 2 * radius + 1
        for pat, out in table:
            if len(pat) != width:
                raise RuleError(f"pattern {pat!r} should have length {width}")
            alphabet.check_word(out)
        alphabet.check_word(default)

        def fn(x: str) -> str:
            for pat, out in table:
                if all(p == WILDCARD or p == a for p, a in zip(pat, x)):
                    return out
            return default
        rule = cls(alphabet, radius, fn)
        rule.table, rule.default = list(table), default
        return rule


def apply_fword(f: FiniteWordRule, s: Stream, min_out: int,
                max_silent: int = 1 << 16) -> str:
    """Concatenate outputs until at least min_out letters are written.

    More than max_silent consecutive empty outputs raises StallError.
    """
    if f.alphabet != s.alphabet:
        raise AlphabetError("rule and stream alphabets differ")
    parts: list[str] = []
    total = 0
    silent = 0
    i = 0
    while total < min_out:
        w = f(s.window(i, f.radius))
        if w:
            parts.append(w)
            total += len(w)
            silent = 0
        else:
            silent += 1
            if silent > max_silent:
                raise StallError(f"no output for {silent} positions (at index {i})")
        i += 1
    return "".join(parts)


# files

def _body(text: str, magic: str) -> list[str]:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != magic:
        raise RuleError(f"file must start with {magic}")
    return lines[1:]


def parse_hybrid(text: str) -> HybridRule:
    lines = _body(text, "%hca")
    if len(lines) < 3:
        raise RuleError("expected alphabet:, radius: and phases:")
    alphabet = Alphabet(_field(lines[0], "alphabet"))
    radius = int(_field(lines[1], "radius"))
    k = int(_field(lines[2], "phases"))
    blocks: list[list[tuple[str, str]]] = []
    defaults: list[str | None] = []
    for ln in lines[3:]:
        if ln.startswith("phase") and ln.endswith(":"):
            want = len(blocks) + 1
            if ln[len("phase"):-1].strip() != str(want):
                raise RuleError(f"expected 'phase {want}:', got {ln!r}")
            blocks.append([])
            defaults.append(None)
            continue
        if not blocks:
            raise RuleError("pattern line before the first phase header")
        pat, out = _arrow(ln)
        if defaults[-1] is not None:
            raise RuleError("nothing may follow a phase's default line")
        if pat == "default":
            defaults[-1] = out
        else:
            blocks[-1].append((pat, out))
    if len(blocks) != k:
        raise RuleError(f"declared {k} phases, found {len(blocks)}")
    rules = []
    for n, (table, default) in enumerate(zip(blocks, defaults), 1):
        if default is None:
            raise RuleError(f"phase {n} has no default line")
        rules.append(LocalRule(alphabet, radius, table=table, default=default))
    return HybridRule(rules)


def format_hybrid(h: HybridRule) -> str:
    lines = ["%hca", f"alphabet: {h.alphabet.letters}", f"radius: {h.radius}",
             f"phases: {h.phases}"]
    for k, r in enumerate(h.rules, 1):
        if r.table is None or r.radius != h.radius:
            raise RuleError("only table phases of full radius can be written")
        lines.append(f"phase {k}:")
        lines += [f"{p} -> {a}" for p, a in r.table]
        lines.append(f"default -> {r.default}")
    return "\n".join(lines) + "\n"


def read_hybrid(path: str) -> HybridRule:
    with open(path, encoding="utf-8") as fh:
        return parse_hybrid(fh.read())


def parse_fword(text: str) -> FiniteWordRule:
    """`%fca`, alphabet:, radius:, `pattern -> word` lines, `default -> word`; '-' is empty."""
    lines = _body(text, "%fca")
    if len(lines) < 3:
        raise RuleError("expected alphabet:, radius:, patterns and a default")
    alphabet = Alphabet(_field(lines[0], "alphabet"))
    radius = int(_field(lines[1], "radius"))
    table = []
    for ln in lines[2:-1]:
        pat, out = _arrow(ln)
        table.append((pat, "" if out == "-" else out))
    pat, default = _arrow(lines[-1])
    if pat != "default":
        raise RuleError("the last line must be 'default -> <word>'")
    return FiniteWordRule.from_table(alphabet, radius, table,
                                     "" if default == "-" else default)


def format_fword(f: FiniteWordRule) -> str:
    table = getattr(f, "table", None)
    if table is None:
        raise RuleError("only table-backed rules can be written")
    lines = ["%fca", f"alphabet: {f.alphabet.letters}", f"radius: {f.radius}"]
    lines += [f"{p} -> {w or '-'}" for p, w in table]
    lines.append(f"default -> {f.default or '-'}")
    return "\n".join(lines) + "\n"


def read_fword(path: str) -> FiniteWordRule:
    with open(path, encoding="utf-8") as fh:
        return parse_fword(fh.read())
