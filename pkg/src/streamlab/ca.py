"""One-dimensional cellular automata acting on one-sided streams.

A local rule of radius N sees the 2N+1 letters around a position; positions
left of the stream start read as the boundary symbol '#'. Applying a rule to
a stream gives a new lazy stream.
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

from .streams import (
    BINARY, BOUNDARY, WILDCARD, Alphabet, AlphabetError, Stream,
)

__all__ = [
    "RuleError", "LocalRule", "neighborhood", "apply", "apply_n", "compose",
    "xor_rule", "eca_rule", "const_rule", "identity_rule", "tail_rule", "prepend_rule",
    "periodic_rule", "mu_chain_rule", "sparse_extract_w", "sparse_recover_rule",
    "suprema_start", "suprema_encode", "suprema_decode_rules", "maximal_inverse_rule",
    "has_subperiod", "parse_rule", "format_rule", "read_rule", "write_rule",
]


class RuleError(ValueError):
    pass


def _match(pattern: str, window: str) -> bool:
    for p, x in zip(pattern, window):
        if p != WILDCARD and p != x:
            return False
    return True


class LocalRule:
    """A total map from neighborhoods to letters.

    Either give `fn` directly, or give a pattern table (first match wins,
    '_' matches anything) plus a default letter.
    """

    def __init__(self, alphabet: Alphabet, radius: int,
                 fn: Callable[[str], str] | None = None,
                 table: Sequence[tuple[str, str]] | None = None,
                 default: str | None = None, name: str | None = None):
        if radius < 0:
            raise RuleError("radius must be non-negative")
        self.alphabet = alphabet
        self.radius = radius
        self.name = name
        self.table = None if table is None else list(table)
        self.default = default
        if self.table is not None:
            if default is None:
                raise RuleError("a table rule needs a default letter")
            alphabet.check_word(default)
            width = 2 * radius + 1
            allowed = set(alphabet.letters) | {BOUNDARY, WILDCARD}
            for pat, out in self.table:
                if len(pat) != width:
                    raise RuleError(f"pattern {pat!r} should have length {width}")
                if not set(pat) <= allowed:
                    raise RuleError(f"pattern {pat!r} uses letters outside the alphabet")
                if len(out) != 1 or out not in alphabet:
                    raise RuleError(f"output {out!r} is not a letter of the alphabet")
            self._exact = None
            if not any(WILDCARD in p for p, _ in self.table):
                self._exact = {}
                for p, o in self.table:
                    self._exact.setdefault(p, o)
            fn = self._table_eval
        elif fn is None:
            raise RuleError("give either fn or table")
        self._fn = fn
        self._cache: dict[str, str] = {}

    def _table_eval(self, window: str) -> str:
        if self._exact is not None:
            return self._exact.get(window, self.default)
        for pat, out in self.table:
            if WILDCARD in pat:
                if _match(pat, window):
                    return out
            elif pat == window:
                return out
        return self.default

    def __call__(self, window: str) -> str:
        out = self._cache.get(window)
        if out is None:
            if len(window) != 2 * self.radius + 1:
                raise RuleError(
                    f"window {window!r} does not have length {2 * self.radius + 1}")
            out = self._fn(window)
            if out == BOUNDARY or out not in self.alphabet:
                raise RuleError(f"rule produced {out!r} on window {window!r}")
            if len(self._cache) < 1 << 20:
                self._cache[window] = out
        return out

    eval = __call__

    def __repr__(self) -> str:
        return f"<LocalRule {self.name or '?'} N={self.radius} over {self.alphabet.letters!r}>"

    def table_entries(self, windows: Iterable[str] | None = None) -> list[tuple[str, str]]:
        """Materialize (window, letter) pairs; all windows if radius is small."""
        if windows is None:
            if self.table is not None:
                return list(self.table) + [(WILDCARD * (2 * self.radius + 1), self.default)]
            if self.radius > 4:
                raise RuleError("refusing to enumerate all windows for radius > 4")
            windows = _all_windows(self.alphabet, self.radius)
        return [(w, self(w)) for w in windows]


def _all_windows(alphabet: Alphabet, radius: int) -> Iterable[str]:
    from itertools import product
    width = 2 * radius + 1
    for h in range(radius, -1, -1):
        for body in product(alphabet.letters, repeat=width - h):
            yield BOUNDARY * h + "".join(body)


def neighborhood(s: Stream, radius: int, i: int) -> str:
    if i < 0:
        raise IndexError("position must be non-negative")
    return s.window(i, radius)


def _check(rule_alphabet: Alphabet, s: Stream) -> None:
    if rule_alphabet != s.alphabet:
        raise AlphabetError(
            f"rule alphabet {rule_alphabet.letters!r} does not match stream "
            f"alphabet {s.alphabet.letters!r}")


def apply(rule: LocalRule, s: Stream) -> Stream:
    _check(rule.alphabet, s)
    n = rule.radius
    return Stream.from_function(rule.alphabet, lambda i: rule(s.window(i, n)),
                                f"{rule.name or 'ca'}({s.name})")


def apply_n(rule: LocalRule, s: Stream, t: int) -> Stream:
    for _ in range(t):
        s = apply(rule, s)
    return s


def compose(r1: LocalRule, r2: LocalRule) -> LocalRule:
    """The rule doing r1 then r2, of radius N1 + N2.

    Intermediate cells left of the stream start stay '#', so the result
    agrees with applying r1 and r2 in sequence at every index.
    """
    if r1.alphabet != r2.alphabet:
        raise AlphabetError("cannot compose rules over different alphabets")
    n1, n2 = r1.radius, r2.radius
    w1 = 2 * n1 + 1

    def fn(x: str) -> str:
        mid = "".join(
            BOUNDARY if x[n1 + j] == BOUNDARY else r1(x[j:j + w1])
            for j in range(2 * n2 + 1))
        return r2(mid)
    return LocalRule(r1.alphabet, n1 + n2, fn,
                     name=f"{r2.name or 'r2'}.{r1.name or 'r1'}")


def _bit(x: str) -> int:
    return 1 if x == "1" else 0


def xor_rule() -> LocalRule:
    """x(i) + x(i+1) mod 2; the left neighbor is ignored."""
    return LocalRule(BINARY, 1, lambda w: "1" if w[1] != w[2] else "0", name="xor")


def eca_rule(n: int) -> LocalRule:
    """Wolfram elementary rule n; '#' reads as 0."""
    if not 0 <= n <= 255:
        raise RuleError("elementary rule numbers are 0..255")

    def fn(w: str) -> str:
        k = 4 * _bit(w[0]) + 2 * _bit(w[1]) + _bit(w[2])
        return "1" if (n >> k) & 1 else "0"
    return LocalRule(BINARY, 1, fn, name=f"eca{n}")


def const_rule(alphabet: Alphabet, y: str) -> LocalRule:
    alphabet.check_word(y)
    return LocalRule(alphabet, 0, lambda w: y, name=f"const{y}")


def identity_rule(alphabet: Alphabet) -> LocalRule:
    return LocalRule(alphabet, 0, lambda w: w, name="id")


def tail_rule(alphabet: Alphabet) -> LocalRule:
    return LocalRule(alphabet, 1, lambda w: w[2], name="tail")


def prepend_rule(alphabet: Alphabet, w: str) -> LocalRule:
    """Maps s to w . s."""
    alphabet.check_word(w)
    n = len(w)
    if n == 0:
        return identity_rule(alphabet)

    def fn(x: str) -> str:
        h = len(x) - len(x.lstrip(BOUNDARY))
        if h > 0:
            return w[n - h]
        return x[0]
    return LocalRule(alphabet, n, fn, name=f"prepend{w}")


def has_subperiod(w: str) -> bool:
    """True if w equals one of its own nontrivial rotations."""
    return (w + w).find(w, 1) < len(w)


def periodic_rule(src: str, dst: str, alphabet: Alphabet = BINARY) -> LocalRule:
    """Map src^w onto dst^w, reading the |src| letters from the center rightwards."""
    m, n = len(src), len(dst)
    if m == 0 or n == 0 or m % n:
        raise RuleError("|dst| must divide |src|")
    if has_subperiod(src):
        raise RuleError(f"{src!r} has a subperiod; rotations would be ambiguous")
    alphabet.check_word(src)
    alphabet.check_word(dst)
    radius = m - 1
    shifts = {(src + src)[r:r + m]: dst[r % n] for r in range(m)}
    # the right half of a radius m-1 window is exactly m letters long
    table = [(WILDCARD * radius + rot, out) for rot, out in shifts.items()]
    return LocalRule(alphabet, radius, table=table, default=alphabet.first,
                     name=f"periodic({src}->{dst})")


def mu_chain_rule(i: int) -> LocalRule:
    """Turn the zeros of the period-(i+1) blocks into ones.

    A centered 0 inside a run of k <= i zeros becomes 1 iff the run is
    preceded by 11 or by 1 0^i 1 and followed by a 1.
    """
    if i < 1:
        raise RuleError("i must be at least 1")
    radius = 2 * i + 1
    c = radius
    gap = "1" + "0" * i + "1"

    def fn(x: str) -> str:
        if x[c] == "1":
            return "1"
        a = c
        while a > 0 and x[a - 1] == "0":
            a -= 1
        b = c
        while b < len(x) - 1 and x[b + 1] == "0":
            b += 1
        k = b - a + 1
        if k > i or b + 1 >= len(x) or x[b + 1] != "1":
            return "0"
        if x[max(a - 2, 0):a] == "11":
            return "1"
        if a - len(gap) >= 0 and x[a - len(gap):a] == gap:
            return "1"
        return "0"
    return LocalRule(BINARY, radius, fn, name=f"mu_chain{i}")


def sparse_extract_w(rule: LocalRule, n: int | None = None) -> str:
    """The image of a lone 1 sweeping through the window."""
    if n is None:
        n = rule.radius
    return "".join(rule("0" * (2 * n - i) + "1" + "0" * i) for i in range(2 * n + 1))


def sparse_recover_rule(w: str) -> LocalRule:
    """Emit 1 where an occurrence of w is centered on the current cell.

    A lone 1 at position p of a sparse stream shows up in its image as w
    spanning p-N..p+N, so centering recovers the original position.
    """
    if not w:
        raise RuleError("w must be nonempty")
    radius = len(w) - 1
    lo = radius - (len(w) - 1) // 2
    hi = lo + len(w)
    return LocalRule(BINARY, radius, lambda x: "1" if x[lo:hi] == w else "0",
                     name=f"recover({w})")


_SUPREMA_CODES = {
    # (offset of tau's 1 relative to sigma's 1) -> 4-letter code
    0: "1000", 1: "1100", 2: "1010", 3: "1110",
    -1: "1001", -2: "1101", -3: "1011",
}
_SIGMA_AT = {"1000": 0, "1100": 0, "1010": 0, "1110": 0, "1001": 1, "1101": 2, "1011": 3}
_TAU_AT = {"1000": 0, "1100": 1, "1010": 2, "1110": 3, "1001": 0, "1101": 0, "1011": 0}


def suprema_start(sigma: Stream, tau: Stream, horizon: int = 4096, gap: int = 7) -> int:
    """First index n after which, up to the horizon, every 1 in either stream
    is followed by at least `gap` zeros and nothing from before n pairs with
    anything at or after n."""
    s = sigma.prefix(horizon + gap + 1)
    t = tau.prefix(horizon + gap + 1)
    last_bad = -1
    for p in range(horizon):
        for x in (s, t):
            if x[p] == "1" and "1" in x[p + 1:p + 1 + gap]:
                last_bad = p
    n = last_bad + 1
    # step past any 1 at last_bad+1..: make sure the three cells before n are empty
    while "1" in s[max(n - 3, 0):n] or "1" in t[max(n - 3, 0):n]:
        n += 1
    return n


def suprema_encode(sigma: Stream, tau: Stream, start: int | None = None) -> Stream:
    """Encode two sparse streams into one, with zeros before `start`.

    Only pairs whose 1s lie at most 3 apart have a code; a 1 with no partner
    within distance 3 in the other stream is not representable and becomes 0.
    """
    if sigma.alphabet != BINARY or tau.alphabet != BINARY:
        raise AlphabetError("suprema encoding needs binary streams")
    n = suprema_start(sigma, tau) if start is None else start

    def code_at(p: int) -> str | None:
        if p < n:
            return None
        if sigma[p] == "1":
            if any(p - d >= n and tau[p - d] == "1" for d in (1, 2, 3)):
                return None
            for d in range(4):
                if tau[p + d] == "1":
                    return _SUPREMA_CODES[d]
            return None
        if tau[p] == "1":
            if any(p - d >= n and sigma[p - d] == "1" for d in (1, 2, 3)):
                return None
            for d in (1, 2, 3):
                if sigma[p + d] == "1":
                    return _SUPREMA_CODES[-d]
        return None

    def f(k: int) -> str:
        for p in range(max(k - 3, 0), k + 1):
            code = code_at(p)
            if code is not None:
                return code[k - p]
        return "0"
    return Stream.from_function(BINARY, f, "suprema")


def suprema_decode_rules() -> tuple[LocalRule, LocalRule]:
    """Rules recovering sigma and tau from the encoded stream."""
    radius = 7

    def decoder(at: dict[str, int]) -> Callable[[str], str]:
        def fn(x: str) -> str:
            c = radius
            for p in range(c - 3, c + 1):
                if x[p] == "1" and all(y != "1" for y in x[p - 4:p]):
                    code = x[p:p + 4]
                    return "1" if at.get(code) == c - p else "0"
            return "0"
        return fn
    return (LocalRule(BINARY, radius, decoder(_SIGMA_AT), name="suprema_sigma"),
            LocalRule(BINARY, radius, decoder(_TAU_AT), name="suprema_tau"))


def maximal_inverse_rule(w: str, vh: str, alphabet: Alphabet = BINARY) -> LocalRule:
    """Replace every occurrence of vh by w; vh must not overlap its shifts."""
    if len(w) != len(vh):
        raise RuleError("w and its replacement must have the same length")
    if any(vh[k:] == vh[:len(vh) - k] for k in range(1, len(vh))):
        raise RuleError(f"{vh!r} overlaps one of its own shifts")
    alphabet.check_word(w)
    alphabet.check_word(vh)
    m = len(vh)
    radius = m - 1

    def fn(x: str) -> str:
        c = radius
        for p in range(c - m + 1, c + 1):
            if x[p:p + m] == vh:
                return w[c - p]
        return x[c]
    return LocalRule(alphabet, radius, fn, name="maximal_inverse")


# rule files

def parse_rule(text: str) -> LocalRule:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if len(lines) < 4 or lines[0] != "%ca":
        raise RuleError("a rule file starts with %ca, alphabet, radius and ends with default")
    alphabet = Alphabet(_field(lines[1], "alphabet"))
    try:
        radius = int(_field(lines[2], "radius"))
    except ValueError:
        raise RuleError("radius must be an integer") from None
    table = []
    for ln in lines[3:-1]:
        pat, out = _arrow(ln)
        table.append((pat, out))
    pat, default = _arrow(lines[-1])
    if pat != "default":
        raise RuleError("the last line must be 'default -> <letter>'")
    return LocalRule(alphabet, radius, table=table, default=default)


def _field(line: str, key: str) -> str:
    k, sep, v = line.partition(":")
    if not sep or k.strip() != key:
        raise RuleError(f"expected '{key}: ...', got {line!r}")
    return v.strip()


def _arrow(line: str) -> tuple[str, str]:
    left, sep, right = line.partition("->")
    if not sep:
        raise RuleError(f"expected 'pattern -> letter', got {line!r}")
    return left.strip(), right.strip()


def format_rule(rule: LocalRule, windows: Iterable[str] | None = None) -> str:
    """Serialize a rule; non-table rules are enumerated window by window."""
    lines = ["%ca", f"alphabet: {rule.alphabet.letters}", f"radius: {rule.radius}"]
    if rule.table is not None and windows is None:
        entries, default = rule.table, rule.default
    else:
        default = rule.alphabet.first
        entries = [(w, a) for w, a in rule.table_entries(windows) if a != default]
    lines += [f"{p} -> {a}" for p, a in entries]
    lines.append(f"default -> {default}")
    return "\n".join(lines) + "\n"


def read_rule(path: str) -> LocalRule:
    with open(path, encoding="utf-8") as fh:
        return parse_rule(fh.read())


def write_rule(rule: LocalRule, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_rule(rule))
