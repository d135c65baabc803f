"""Estimating whether one stream reduces to another by a cellular automaton.

The working criterion: some radius N exists such that equal N-neighborhoods
in the source always carry equal target letters. A pair of positions that
breaks this for a given N is a conflict witness; a scan without conflicts
yields a rule that reproduces the target on the scanned range.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction

from .ca import LocalRule, apply, format_rule
from .streams import Alphabet, AlphabetError, Stream

__all__ = [
    "Conflict", "PartialRuleTable", "Verdict", "algorithm1", "Algorithm1Trace",
    "infer_rule", "synthesize", "congruent", "format_verdict",
]


@dataclass(frozen=True)
class Conflict:
    """Positions i_prime < i with equal source windows and different targets."""
    radius: int
    i: int
    i_prime: int


@dataclass
class PartialRuleTable:
    radius: int
    alphabet: Alphabet
    entries: dict[str, tuple[str, int]] = field(default_factory=dict)

    def letter(self, window: str) -> str | None:
        hit = self.entries.get(window)
        return None if hit is None else hit[0]

    def to_rule(self, default: str | None = None) -> LocalRule:
        """Complete the table into a total rule; unseen windows get `default`."""
        default = self.alphabet.first if default is None else default
        table = [(w, a) for w, (a, _) in self.entries.items() if a != default]
        return LocalRule(self.alphabet, self.radius, table=table, default=default,
                         name=f"synth{self.radius}")


@dataclass
class Verdict:
    answer: bool
    radius: int
    scanned: int
    witnesses: list[Conflict] = field(default_factory=list)
    rule: LocalRule | None = None
    start: int = 0

    @property
    def witness(self) -> Conflict | None:
        return self.witnesses[-1] if self.witnesses else None


def _check_pair(sigma: Stream, tau: Stream) -> Alphabet:
    if sigma.alphabet != tau.alphabet:
        raise AlphabetError("source and target alphabets differ")
    return sigma.alphabet


def _padded(s: Stream, radius: int, horizon: int) -> str:
    return "#" * radius + s.prefix(horizon + radius)


def infer_rule(sigma: Stream, tau: Stream, radius: int, horizon: int,
               start: int = 0) -> PartialRuleTable | Conflict:
    """Scan i = start..horizon-1 and collect window -> letter, stopping at the first conflict.

    A positive `start` ignores a finite head, which is enough for reductions
    that hold only from some point on (finite mutations are free).
    """
    alphabet = _check_pair(sigma, tau)
    if horizon < 1 or not 0 <= start < horizon:
        raise ValueError("need horizon >= 1 and 0 <= start < horizon")
    src = _padded(sigma, radius, horizon)
    dst = tau.prefix(horizon)
    width = 2 * radius + 1
    table = PartialRuleTable(radius, alphabet)
    seen = table.entries
    for i in range(start, horizon):
        w = src[i:i + width]
        hit = seen.get(w)
        if hit is None:
            seen[w] = (dst[i], i)
        elif hit[0] != dst[i]:
            return Conflict(radius, i, hit[1])
    return table


def synthesize(sigma: Stream, tau: Stream, max_radius: int, horizon: int,
               start: int = 0) -> Verdict:
    """Try radii 0..max_radius; return the first rule consistent on the horizon.

    The rule is re-applied to sigma and checked against tau on every scanned
    index before a yes is returned.
    """
    witnesses = []
    for n in range(max_radius + 1):
        result = infer_rule(sigma, tau, n, horizon, start)
        if isinstance(result, Conflict):
            witnesses.append(result)
            continue
        rule = result.to_rule()
        got = apply(rule, sigma).prefix(horizon)
        if got[start:] != tau.prefix(horizon)[start:]:
            raise AssertionError("synthesized rule does not reproduce the target")
        return Verdict(True, n, horizon - start, witnesses, rule, start)
    return Verdict(False, max_radius, horizon - start, witnesses, None, start)


def _threshold_reached(i: int, alpha: Fraction, size: int, radius: int) -> bool:
    return i >= alpha * size ** (2 * radius + 1)


class _WindowKeys:
    """Exact window equality for one stream via prefix hashes.

    Windows here never touch the left boundary (i >= N), so a window is a
    plain slice of the stream. Hash hits are confirmed by comparing letters.
    """

    MOD = (1 << 61) - 1
    BASE = 1_000_003

    def __init__(self, s: Stream):
        self.s = s
        self.text = ""
        self.h = [0]
        self.pw = [1]

    def _grow(self, n: int) -> None:
        if n <= len(self.text):
            return
        n = max(n, 2 * len(self.text), 64)
        self.text = self.s.prefix(n)
        h, pw, mod, base = self.h, self.pw, self.MOD, self.BASE
        for k in range(len(h) - 1, n):
            h.append((h[-1] * base + ord(self.text[k])) % mod)
            pw.append(pw[-1] * base % mod)

    def key(self, i: int, n: int) -> int:
        a, b = i - n, i + n + 1
        self._grow(b)
        return (self.h[b] - self.h[a] * self.pw[b - a]) % self.MOD

    def same(self, i: int, j: int, n: int) -> bool:
        w = 2 * n + 1
        t = self.text
        return t[i - n:i - n + w] == t[j - n:j - n + w]


class _RadiusCache:
    """The per-radius cache V_N: window -> target letter."""

    def __init__(self, keys: _WindowKeys, n: int):
        self.keys = keys
        self.n = n
        self.slots: dict[int, list[tuple[int, str]]] = {}

    def observe(self, i: int, letter: str) -> bool:
        """Record window(i) -> letter; False if the window was seen with another letter."""
        k = self.keys.key(i, self.n)
        reps = self.slots.get(k)
        if reps is None:
            self.slots[k] = [(i, letter)]
            return True
        for j, a in reps:
            if self.keys.same(i, j, self.n):
                return a == letter
        reps.append((i, letter))
        return True


def algorithm1(sigma: Stream, tau: Stream, c_max: int, alpha: Fraction | int | str) -> bool:
    """The budgeted radius sweep. True means "Yes".

    c counts inner iterations; when it passes c_max the answer is Yes iff the
    current index has reached alpha * |alphabet|^(2N+1).
    """
    alphabet = _check_pair(sigma, tau)
    alpha = Fraction(alpha)
    if c_max < 1 or alpha <= 0:
        raise ValueError("need c_max >= 1 and alpha > 0")
    size = len(alphabet)
    keys = _WindowKeys(sigma)
    c = 0
    n = 0
    while True:
        cache = _RadiusCache(keys, n)
        i = n
        while True:
            c += 1
            if c > c_max:
                return _threshold_reached(i, alpha, size, n)
            if not cache.observe(i, tau.letter_at(i)):
                break
            i += 1
        n += 1


class Algorithm1Trace:
    """Answers algorithm1 for many budgets from one recorded run.

    The run does not depend on c_max until the budget is exhausted, so it is
    enough to remember where each radius started and where it broke off.
    """

    def __init__(self, sigma: Stream, tau: Stream, alpha: Fraction | int | str,
                 max_budget: int):
        alphabet = _check_pair(sigma, tau)
        self.alpha = Fraction(alpha)
        self.size = len(alphabet)
        self.max_budget = max_budget
        # (radius, counter before its first iteration, break index or None)
        self.segments: list[tuple[int, int, int | None]] = []
        keys = _WindowKeys(sigma)
        c = 0
        n = 0
        while c <= max_budget:
            cache = _RadiusCache(keys, n)
            start_c = c
            i = n
            broke = None
            while c <= max_budget:
                c += 1
                if not cache.observe(i, tau.letter_at(i)):
                    broke = i
                    break
                i += 1
            self.segments.append((n, start_c, broke))
            n += 1
        self._starts = [start_c for _, start_c, _ in self.segments]

    def _segment(self, c_max: int) -> tuple[int, int]:
        if not 1 <= c_max <= self.max_budget:
            raise ValueError(f"budget must be in 1..{self.max_budget}")
        # budget c_max runs out on iteration c_max + 1, inside the last
        # segment that starts before it
        target = c_max + 1
        k = bisect_right(self._starts, target - 1) - 1
        n, start_c, broke = self.segments[k]
        if broke is not None and target > start_c + (broke - n) + 1:
            raise AssertionError("trace too short")
        return n, n + (target - start_c - 1)

    def answer(self, c_max: int) -> bool:
        n, i = self._segment(c_max)
        return _threshold_reached(i, self.alpha, self.size, n)

    def radius_at(self, c_max: int) -> int:
        return self._segment(c_max)[0]


def congruent(sigma: Stream, tau: Stream, max_shift: int,
              horizon: int) -> tuple[int, int] | None:
    """Least (n, m), by n+m then n, with sigma(n+i) = tau(m+i) for i < horizon."""
    a = sigma.prefix(max_shift + horizon)
    b = tau.prefix(max_shift + horizon)
    for total in range(max_shift + 1):
        for n in range(total + 1):
            m = total - n
            if a[n:n + horizon] == b[m:m + horizon]:
                return n, m
    return None


def format_verdict(v: Verdict) -> str:
    lines = [f"answer: {'yes' if v.answer else 'no'}",
             f"radius: {v.radius}",
             f"scanned: {v.scanned}"]
    for w in v.witnesses:
        lines.append(f"witness: N={w.radius} i={w.i} i'={w.i_prime}")
    text = "\n".join(lines) + "\n"
    if v.rule is not None:
        text += format_rule(v.rule)
    return text
