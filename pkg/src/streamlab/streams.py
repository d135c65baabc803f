"""Alphabets, lazy memoized streams and the basic stream combinators.

A stream is an infinite word. Letters are produced on demand by a generator
and kept in a growable prefix buffer, so scanning a prefix of length n costs
O(n) generator steps no matter how often it is queried.
"""

from __future__ import annotations

import os
from itertools import count
from typing import Callable, Iterable, Iterator, Mapping

__all__ = [
    "BOUNDARY", "WILDCARD", "DEFAULT_CEILING",
    "StreamError", "IndexCeilingError", "AlphabetError", "EmptyBlocksError",
    "Alphabet", "BINARY", "Stream", "index_ceiling",
    "constant", "from_word", "periodic", "zip_streams", "inv", "concat_blocks",
    "mutate", "drop", "cons",
]

BOUNDARY = "#"
WILDCARD = "_"
DEFAULT_CEILING = 1 << 24


class StreamError(Exception):
    pass


class IndexCeilingError(StreamError):
    """Raised when a stream is queried at or beyond the index ceiling."""


class AlphabetError(StreamError, ValueError):
    pass


class EmptyBlocksError(StreamError):
    """A block concatenation produced nothing for too long."""


def index_ceiling() -> int:
    """Current ceiling; STREAMLAB_MAX_PREFIX overrides the default."""
    raw = os.environ.get("STREAMLAB_MAX_PREFIX")
    if raw:
        return int(raw)
    return DEFAULT_CEILING


class Alphabet:
    """Ordered set of at least two single-character letters."""

    __slots__ = ("letters", "_index")

    def __init__(self, letters: Iterable[str]):
        letters = "".join(letters)
        if len(letters) < 2:
            raise AlphabetError("an alphabet needs at least two letters")
        if len(set(letters)) != len(letters):
            raise AlphabetError(f"duplicate letters in {letters!r}")
        for a in letters:
            if a in (BOUNDARY, WILDCARD) or not a.isprintable() or a.isspace():
                raise AlphabetError(f"letter {a!r} is reserved or unprintable")
        self.letters = letters
        self._index = {a: k for k, a in enumerate(letters)}

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[str]:
        return iter(self.letters)

    def __contains__(self, a: object) -> bool:
        return a in self._index

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Alphabet) and other.letters == self.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __repr__(self) -> str:
        return f"Alphabet({self.letters!r})"

    @property
    def first(self) -> str:
        return self.letters[0]

    def index(self, a: str) -> int:
        return self._index[a]

    def check_word(self, w: str) -> str:
        for a in w:
            if a not in self._index:
                raise AlphabetError(f"letter {a!r} not in alphabet {self.letters!r}")
        return w


BINARY = Alphabet("01")


class Stream:
    """A deterministic infinite word backed by a memoized generator.

    `source` is a zero-argument callable returning a fresh iterator of
    letters. It is called once; its letters are cached as they are pulled.
    """

    def __init__(self, alphabet: Alphabet, source: Callable[[], Iterator[str]],
                 name: str | None = None):
        self.alphabet = alphabet
        self.name = name
        self._source = source
        self._it: Iterator[str] | None = None
        self._buf: list[str] = []

    @classmethod
    def from_function(cls, alphabet: Alphabet, f: Callable[[int], str],
                      name: str | None = None) -> "Stream":
        return cls(alphabet, lambda: (f(i) for i in count()), name)

    def __repr__(self) -> str:
        return f"<Stream {self.name or '?'} over {self.alphabet.letters!r}>"

    def _fill(self, n: int) -> None:
        """Make sure letters 0..n-1 are buffered."""
        buf = self._buf
        if n <= len(buf):
            return
        if n > index_ceiling():
            raise IndexCeilingError(
                f"index {n - 1} is beyond the ceiling {index_ceiling()}")
        if self._it is None:
            self._it = self._source()
        it = self._it
        alphabet = self.alphabet
        while len(buf) < n:
            try:
                a = next(it)
            except StopIteration:
                raise StreamError(
                    f"stream {self.name or '?'} ended at index {len(buf)}") from None
            if a not in alphabet:
                raise AlphabetError(
                    f"stream {self.name or '?'} produced {a!r} at index {len(buf)}")
            buf.append(a)

    def letter_at(self, i: int) -> str:
        if i < 0:
            raise IndexError("stream indices are non-negative")
        if i >= len(self._buf):
            self._fill(i + 1)
        return self._buf[i]

    __getitem__ = letter_at

    def prefix(self, n: int) -> str:
        if n < 0:
            raise ValueError("prefix length must be non-negative")
        self._fill(n)
        return "".join(self._buf[:n])

    def segment(self, a: int, b: int) -> str:
        """Letters a..b-1, with the boundary symbol at negative indices."""
        if b <= a:
            return ""
        self._fill(b)
        if a >= 0:
            return "".join(self._buf[a:b])
        return BOUNDARY * (min(b, 0) - a) + "".join(self._buf[0:max(b, 0)])

    def window(self, i: int, radius: int) -> str:
        """The radius-N neighborhood of position i."""
        return self.segment(i - radius, i + radius + 1)

    def __iter__(self) -> Iterator[str]:
        for i in count():
            yield self.letter_at(i)


def constant(alphabet: Alphabet, a: str, name: str | None = None) -> Stream:
    alphabet.check_word(a)

    def gen():
        while True:
            yield a
    return Stream(alphabet, gen, name or f"{a}^w")


def from_word(alphabet: Alphabet, prefix: str, period: str,
              name: str | None = None) -> Stream:
    """The ultimately periodic stream prefix . period^w."""
    alphabet.check_word(prefix)
    alphabet.check_word(period)
    if not period:
        raise ValueError("period must be nonempty")

    def gen():
        yield from prefix
        while True:
            yield from period
    return Stream(alphabet, gen, name)


def periodic(alphabet: Alphabet, w: str, name: str | None = None) -> Stream:
    return from_word(alphabet, "", w, name or f"({w})^w")


def _same_alphabet(a: Stream, b: Stream) -> Alphabet:
    if a.alphabet != b.alphabet:
        raise AlphabetError(
            f"alphabet mismatch: {a.alphabet.letters!r} vs {b.alphabet.letters!r}")
    return a.alphabet


def zip_streams(a: Stream, b: Stream) -> Stream:
    """Interleave: result(2i) = a(i), result(2i+1) = b(i)."""
    alphabet = _same_alphabet(a, b)

    def gen():
        for i in count():
            yield a.letter_at(i)
            yield b.letter_at(i)
    return Stream(alphabet, gen, f"zip({a.name},{b.name})")


def inv(a: Stream) -> Stream:
    """Bitwise complement of a binary stream."""
    if a.alphabet != BINARY:
        raise AlphabetError("inv needs the binary alphabet 01")
    flip = {"0": "1", "1": "0"}
    return Stream(BINARY, lambda: (flip[x] for x in a), f"inv({a.name})")


def concat_blocks(alphabet: Alphabet, block_at: Callable[[int], str],
                  scan_bound: int = 100_000, name: str | None = None) -> Stream:
    """Concatenate the words block_at(0), block_at(1), ...

    More than `scan_bound` consecutive empty blocks is treated as the
    concatenation being finite and raises EmptyBlocksError.
    """

    def gen():
        empty = 0
        for i in count():
            w = block_at(i)
            if not w:
                empty += 1
                if empty > scan_bound:
                    raise EmptyBlocksError(
                        f"{scan_bound} consecutive empty blocks after block {i - empty}")
                continue
            empty = 0
            yield from w
    return Stream(alphabet, gen, name)


def mutate(a: Stream, edits: Mapping[int, str]) -> Stream:
    """Override finitely many positions."""
    edits = dict(edits)
    for i, x in edits.items():
        if i < 0:
            raise ValueError("mutation index must be non-negative")
        a.alphabet.check_word(x)
        if len(x) != 1:
            raise ValueError("a mutation replaces exactly one letter")
    if not edits:
        return a

    def gen():
        for i, x in enumerate(a):
            yield edits.get(i, x)
    return Stream(a.alphabet, gen, f"mutate({a.name})")


def drop(a: Stream, n: int) -> Stream:
    if n < 0:
        raise ValueError("drop count must be non-negative")
    if n == 0:
        return a
    return Stream(a.alphabet, lambda: (a.letter_at(i + n) for i in count()),
                  f"drop({n},{a.name})")


def cons(w: str, a: Stream) -> Stream:
    a.alphabet.check_word(w)
    if not w:
        return a

    def gen():
        yield from w
        yield from a
    return Stream(a.alphabet, gen, f"cons({w},{a.name})")
