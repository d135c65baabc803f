"""Binary encodings of streams over larger alphabets.

The self-delimiting block code sends a letter a to 1 . g(a) . 1 . 0^(2^d+1),
where g is an injective d-bit code. Cellular-automaton reductions carry over
through it (see `transport_rule`). The naive 2-bit code does not preserve
reducibility and is kept as a counterexample.
"""

from __future__ import annotations

import math
from typing import Mapping

from .ca import LocalRule
from .streams import BINARY, BOUNDARY, Alphabet, AlphabetError, Stream, StreamError

__all__ = ["Codec", "DecodeError", "encode", "decode", "transport_rule",
           "naive_encode", "NAIVE_CODE", "parse_gamma"]


class DecodeError(StreamError, ValueError):
    def __init__(self, block: int, text: str):
        super().__init__(f"malformed block {block}: {text!r}")
        self.block = block


class Codec:
    def __init__(self, alphabet: Alphabet, gamma: Mapping[str, str] | None = None):
        self.alphabet = alphabet
        self.d = max(1, math.ceil(math.log2(len(alphabet))))
        if gamma is None:
            gamma = {a: format(k, f"0{self.d}b") for k, a in enumerate(alphabet)}
        gamma = dict(gamma)
        if set(gamma) != set(alphabet.letters):
            raise ValueError("gamma must cover exactly the alphabet")
        if len(set(gamma.values())) != len(gamma):
            raise ValueError("gamma must be injective")
        for a, c in gamma.items():
            if len(c) != self.d or set(c) - {"0", "1"}:
                raise ValueError(f"codeword for {a!r} must be {self.d} bits")
        self.gamma = gamma
        self.tail = 2 ** self.d + 1
        self.block_len = self.d + self.tail + 2
        self.phi = {a: "1" + c + "1" + "0" * self.tail for a, c in gamma.items()}
        self._inverse = {c: a for a, c in gamma.items()}

    def __repr__(self) -> str:
        return f"<Codec {self.alphabet.letters!r} d={self.d} L={self.block_len}>"

    def decode_block(self, block: str, k: int = 0) -> str:
        d = self.d
        if (len(block) != self.block_len or block[0] != "1" or block[d + 1] != "1"
                or block[d + 2:] != "0" * self.tail or block[1:d + 1] not in self._inverse):
            raise DecodeError(k, block)
        return self._inverse[block[1:d + 1]]


def _letters_fit(c: Codec, s: Stream) -> None:
    if not set(s.alphabet.letters) <= set(c.alphabet.letters):
        raise AlphabetError(
            f"stream alphabet {s.alphabet.letters!r} is not inside {c.alphabet.letters!r}")


def encode(c: Codec, s: Stream) -> Stream:
    _letters_fit(c, s)
    phi = c.phi

    def gen():
        for a in s:
            yield from phi[a]
    return Stream(BINARY, gen, f"encode({s.name})")


def decode(c: Codec, b: Stream) -> Stream:
    L = c.block_len

    def f(k: int) -> str:
        return c.decode_block(b.segment(k * L, (k + 1) * L), k)
    return Stream.from_function(c.alphabet, f, f"decode({b.name})")


def transport_rule(c: Codec, rule: LocalRule) -> LocalRule:
    """A binary rule acting on encoded streams the way `rule` acts on streams.

    The phase inside a block is found from the block's right-hand shape
    (a 1 followed by exactly 2^d+1 zeros), then the source neighborhood is
    read off the codewords. Windows that are not valid encodings give 0.
    """
    if rule.alphabet != c.alphabet:
        raise AlphabetError("rule alphabet differs from the codec alphabet")
    d, L, n = c.d, c.block_len, rule.radius
    radius = max(L - 1, n * L + d - 1)
    tail = "1" + "0" * c.tail
    inverse = c._inverse
    phi = c.phi

    def fn(x: str) -> str:
        center = radius
        for o in range(L):
            s = center - o
            if x[s] == "1" and x[s + d + 1:s + L] == tail:
                break
        else:
            return "0"
        if o == 0 or o > d:
            return "1" if o == 0 or o == d + 1 else "0"
        letters = []
        for b in range(-n, n + 1):
            p = s + b * L
            code = x[p + 1:p + d + 1]
            if x[p + 1] == BOUNDARY:
                letters.append(BOUNDARY)
            elif code in inverse:
                letters.append(inverse[code])
            else:
                return "0"
        return phi[rule("".join(letters))][o]
    return LocalRule(BINARY, radius, fn, name=f"transport({rule.name})")


NAIVE_CODE = {"A": "00", "B": "01", "C": "10"}


def naive_encode(s: Stream) -> Stream:
    if not set(s.alphabet.letters) <= set(NAIVE_CODE):
        raise AlphabetError("the naive code covers the letters A, B, C only")

    def gen():
        for a in s:
            yield from NAIVE_CODE[a]
    return Stream(BINARY, gen, f"naive({s.name})")


def parse_gamma(text: str) -> dict[str, str]:
    """'A=00,B=01,C=10' -> {'A': '00', ...}"""
    out = {}
    for part in text.split(","):
        a, sep, code = part.partition("=")
        if not sep or len(a.strip()) != 1:
            raise ValueError(f"bad codeword assignment {part!r}")
        out[a.strip()] = code.strip()
    return out
