"""Named stream generators.

Every entry is reachable as `name` or `name:p1/p2/...` from the command line.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import count, product
from typing import Callable, Sequence

from .streams import (
    BINARY, Alphabet, Stream, StreamError, concat_blocks, constant, from_word,
)

__all__ = [
    "CatalogError", "CatalogEntry", "CATALOG", "build", "build_atom", "infer_alphabet",
    "thue_morse", "period_doubling", "tau", "sparse", "sigma_weak", "mu", "mu_block_k",
    "primes", "diag", "fig3", "unipair", "algoctr", "mephisto", "sierpinski",
    "maximal_variant", "hat", "SIERPINSKI_PREFIX", "MEPHISTO_PREFIX",
]

SIERPINSKI_PREFIX = "00111100011000011"
MEPHISTO_PREFIX = "0010011100010011"


class CatalogError(ValueError):
    pass


def infer_alphabet(*words: str) -> Alphabet:
    """Binary when the letters fit in 01, else the sorted letters used.

    A single letter x gets the next code point as a partner, so A alone is AB.
    """
    letters = set("".join(words))
    if letters <= {"0", "1"}:
        return BINARY
    if len(letters) == 1:
        (x,) = letters
        letters.add(chr(ord(x) + 1))
    return Alphabet(sorted(letters))


def thue_morse() -> Stream:
    return Stream.from_function(BINARY, lambda i: "01"[bin(i).count("1") & 1], "tm")


def period_doubling() -> Stream:
    # 1 where the 2-adic valuation of i+1 is even
    def f(i: int) -> str:
        n = i + 1
        v = (n & -n).bit_length() - 1
        return "1" if v % 2 == 0 else "0"
    return Stream.from_function(BINARY, f, "pd")


def tau(k: int) -> Stream:
    """(1 0^{k-1})^w"""
    if k < 1:
        raise CatalogError("tau needs k >= 1")
    return from_word(BINARY, "", "1" + "0" * (k - 1), f"tau:{k}")


_GAPS: dict[str, Callable[[int], int]] = {
    "linear": lambda i: i,
    "square": lambda i: i * i,
    "pow2": lambda i: 2 ** i,
}


def sparse(gap: str) -> Stream:
    try:
        c = _GAPS[gap]
    except KeyError:
        raise CatalogError(f"unknown gap law {gap!r}; use one of {sorted(_GAPS)}") from None
    return concat_blocks(BINARY, lambda i: "1" + "0" * c(i), name=f"sparse:{gap}")


def sigma_weak(i: int) -> Stream:
    if i < 1:
        raise CatalogError("sigma_weak needs i >= 1")
    unit = "1" + "0" * (i - 1)
    return concat_blocks(BINARY, lambda j: unit * j + "0" * (2 ** j),
                         name=f"sigma_weak:{i}")


def mu_block_k(t: int) -> int:
    """Period carried by block t (1-indexed) of the first chain stream."""
    r = math.isqrt(2 * t)
    while r * (r + 1) // 2 < t:
        r += 1
    while r > 1 and (r - 1) * r // 2 >= t:
        r -= 1
    return 2 + (t - r * (r - 1) // 2 - 1)


def mu(j: int) -> Stream:
    if j < 1:
        raise CatalogError("mu needs j >= 1")

    def block(i: int) -> str:
        t = i + 1
        k = mu_block_k(t)
        if k <= j:
            k = 1
        return "".join("1" if m % k == 0 else "0" for m in range(t))
    return concat_blocks(BINARY, block, name=f"mu:{j}")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def primes() -> Stream:
    return Stream.from_function(BINARY, lambda i: "1" if _is_prime(i) else "0", "primes")


def diag(side: str) -> Stream:
    if side == "a":
        block = lambda i: "0" * (5 * i + 2) + "1" + "0" * i
    elif side == "b":
        block = lambda i: "0" * (3 * i + 1) + "1" + "0" * (3 * i + 1)
    else:
        raise CatalogError("diag takes a or b")
    return concat_blocks(BINARY, block, name=f"diag:{side}")


def fig3(side: str) -> Stream:
    xi = lambda i: "1" if i % 3 == 2 else "0"
    if side == "src":
        block = lambda i: "0" * (i + 1) + "1" + xi(i + 1)
    elif side == "dst":
        block = lambda i: "0" * (i + 1) + "1" + xi(i)
    else:
        raise CatalogError("fig3 takes src or dst")
    return concat_blocks(BINARY, block, name=f"fig3:{side}")


def unipair(side: str, alphabet: Alphabet = BINARY) -> Stream:
    """All aligned pairs of equal-length words, shortest first."""
    if side not in ("a", "b"):
        raise CatalogError("unipair takes a or b")
    pick = 0 if side == "a" else 1

    def gen():
        for k in count(1):
            words = ["".join(p) for p in product(alphabet.letters, repeat=k)]
            for w1 in words:
                for w2 in words:
                    yield from (w1, w2)[pick]
    return Stream(alphabet, gen, f"unipair:{side}")


def algoctr(alpha: Fraction, sigma_size: int) -> Stream:
    alpha = Fraction(alpha)
    if alpha <= 0 or sigma_size < 2:
        raise CatalogError("algoctr needs alpha > 0 and an alphabet size >= 2")
    return concat_blocks(
        BINARY, lambda i: "0" * math.ceil(alpha * sigma_size ** (2 * i + 1)) + "1",
        name=f"algoctr:{alpha}/{sigma_size}")


def mephisto() -> Stream:
    image = {"0": "001", "1": "110"}
    s: Stream

    def f(i: int) -> str:
        if i == 0:
            return "0"
        return image[s.letter_at(i // 3)][i % 3]
    s = Stream.from_function(BINARY, f, "mephisto")
    return s


def sierpinski() -> Stream:
    """Only the known prefix; reading past it raises StreamError."""

    def gen():
        yield from SIERPINSKI_PREFIX
        raise StreamError(
            f"the sierpinski fixture only covers {len(SIERPINSKI_PREFIX)} letters")
    return Stream(BINARY, gen, "sierpinski")


def hat(v: str) -> str:
    """A word containing v that cannot overlap its own shifts."""
    return "1" + v + "1" + "0" * (len(v) + 1)


_SELECTORS: dict[str, Callable[[int], bool]] = {
    "all": lambda k: True,
    "even": lambda k: k % 2 == 0,
    "odd": lambda k: k % 2 == 1,
    "pow2": lambda k: k > 0 and k & (k - 1) == 0,
}


def maximal_variant(base: Stream, w: str, v: str,
                    selector: str | Callable[[int], bool] = "even") -> Stream:
    """Replace selected occurrences of w in base by hat(v).

    Occurrences are found greedily left to right without overlap and numbered
    from 0; `selector` decides by that number.
    """
    vh = hat(v)
    if len(w) != len(vh):
        raise CatalogError(f"w must have length |hat(v)| = {len(vh)}")
    base.alphabet.check_word(w)
    base.alphabet.check_word(vh)
    pick = _SELECTORS[selector] if isinstance(selector, str) else selector
    n = len(w)

    def gen():
        i = 0
        k = 0
        while True:
            if base.segment(i, i + n) == w:
                yield from (vh if pick(k) else w)
                k += 1
                i += n
            else:
                yield base.letter_at(i)
                i += 1
    return Stream(base.alphabet, gen, "maximal_variant")


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    params: str
    builder: Callable[[Sequence[str]], Stream]
    doc: str


def _int(p: str, what: str) -> int:
    try:
        return int(p)
    except ValueError:
        raise CatalogError(f"{what} must be an integer, got {p!r}") from None


def _nparams(params: Sequence[str], n: int, name: str) -> None:
    if len(params) != n:
        raise CatalogError(f"{name} takes {n} parameter(s), got {len(params)}")


def _b_periodic(p):
    _nparams(p, 1, "periodic")
    if not p[0]:
        raise CatalogError("periodic needs a nonempty word")
    return from_word(infer_alphabet(p[0]), "", p[0], f"periodic:{p[0]}")


def _b_ultper(p):
    _nparams(p, 2, "ultper")
    if not p[1]:
        raise CatalogError("ultper needs a nonempty period")
    return from_word(infer_alphabet(*p), p[0], p[1], f"ultper:{p[0]}/{p[1]}")


def _b_algoctr(p):
    if len(p) == 2:
        alpha = Fraction(p[0])
    elif len(p) == 3:
        alpha = Fraction(_int(p[0], "p"), _int(p[1], "q"))
    else:
        raise CatalogError("algoctr takes alpha/size or p/q/size")
    return algoctr(alpha, _int(p[-1], "alphabet size"))


def _b_maximal(p):
    _nparams(p, 4, "maximal_variant")
    base = build_atom(p[0])
    if p[3] not in _SELECTORS:
        raise CatalogError(f"selector must be one of {sorted(_SELECTORS)}")
    return maximal_variant(base, p[1], p[2], p[3])


def _const(name, f):
    def b(p):
        _nparams(p, 0, name)
        return f()
    return b


def _one(name, f, conv=lambda x: x):
    def b(p):
        _nparams(p, 1, name)
        return f(conv(p[0]))
    return b


CATALOG: dict[str, CatalogEntry] = {e.name: e for e in [
    CatalogEntry("tm", "", _const("tm", thue_morse), "Thue-Morse word 0110100110010110..."),
    CatalogEntry("pd", "", _const("pd", period_doubling), "period-doubling word 1011101010111011..."),
    CatalogEntry("ones", "", _const("ones", lambda: constant(BINARY, "1", "ones")), "1^w"),
    CatalogEntry("zeros", "", _const("zeros", lambda: constant(BINARY, "0", "zeros")), "0^w"),
    CatalogEntry("periodic", "w", _b_periodic, "w^w"),
    CatalogEntry("ultper", "x/y", _b_ultper, "x . y^w"),
    CatalogEntry("tau", "k", _one("tau", tau, lambda x: _int(x, "k")), "(1 0^{k-1})^w"),
    CatalogEntry("sparse", "linear|square|pow2", _one("sparse", sparse),
                 "prod 1 0^{c(i)} with c(i) = i, i^2 or 2^i"),
    CatalogEntry("sigma_weak", "i", _one("sigma_weak", sigma_weak, lambda x: _int(x, "i")),
                 "weakly sparse prod_j (1 0^{i-1})^j 0^{2^j}"),
    CatalogEntry("mu", "j", _one("mu", mu, lambda x: _int(x, "j")),
                 "descending-chain stream: periodic blocks, tau_k -> tau_1 for k <= j"),
    CatalogEntry("primes", "", _const("primes", primes), "1 exactly at prime indices"),
    CatalogEntry("diag", "a|b", _one("diag", diag), "incomparable pair built by diagonalization"),
    CatalogEntry("fig3", "src|dst", _one("fig3", fig3),
                 "pair reducible by a transducer but not by a cellular automaton"),
    CatalogEntry("unipair", "a|b", _one("unipair", unipair),
                 "all equal-length word pairs, aligned; pair without upper bound"),
    CatalogEntry("algoctr", "alpha/size or p/q/size", _b_algoctr,
                 "prod 0^{ceil(alpha size^{2i+1})} 1, fools the estimation algorithm"),
    CatalogEntry("mephisto", "", _const("mephisto", mephisto),
                 "fixed point of 0->001, 1->110"),
    CatalogEntry("sierpinski", "", _const("sierpinski", sierpinski),
                 "fixture: the 17 known letters only"),
    CatalogEntry("maximal_variant", "base/w/v/all|even|odd|pow2", _b_maximal,
                 "base with selected occurrences of w replaced by 1 v 1 0^{|v|+1}"),
]}


def build(name: str, params: Sequence[str] = ()) -> Stream:
    try:
        entry = CATALOG[name]
    except KeyError:
        raise CatalogError(f"unknown stream {name!r}") from None
    return entry.builder(list(params))


def build_atom(text: str) -> Stream:
    """Build from `name` or `name:p1/p2/...`."""
    name, sep, rest = text.partition(":")
    params = rest.split("/") if sep else []
    return build(name, params)
