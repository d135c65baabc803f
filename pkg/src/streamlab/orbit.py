"""Space-time diagrams of a rule acting on a binary stream, as PBM images."""

from __future__ import annotations

from dataclasses import dataclass

from .ca import LocalRule, apply
from .streams import BINARY, AlphabetError, Stream

__all__ = ["Orbit", "orbit", "to_pbm", "to_ascii", "delta"]


@dataclass(frozen=True)
class Orbit:
    rows: tuple[str, ...]

    @property
    def width(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def steps(self) -> int:
        return len(self.rows) - 1


def orbit(rule: LocalRule, s: Stream, width: int, steps: int) -> Orbit:
    """Rows s, f(s), ..., f^steps(s), each cut to `width` letters.

    Each row comes from the full iterated stream, so there is no edge decay.
    """
    if s.alphabet != BINARY or rule.alphabet != BINARY:
        raise AlphabetError("orbits are rendered for binary streams only")
    if width < 1 or steps < 0:
        raise ValueError("width must be positive and steps non-negative")
    rows = []
    cur = s
    for t in range(steps + 1):
        if t:
            cur = apply(rule, cur)
        rows.append(cur.prefix(width))
    return Orbit(tuple(rows))


def to_pbm(o: Orbit) -> bytes:
    lines = ["P1", f"{o.width} {len(o.rows)}"]
    lines += [" ".join(row) for row in o.rows]
    return ("\n".join(lines) + "\n").encode("ascii")


def to_ascii(o: Orbit) -> str:
    return "".join(row + "\n" for row in o.rows)


def delta(word: str) -> str:
    """Pairwise XOR of neighbours of a finite binary word (one letter shorter)."""
    return "".join("1" if a != b else "0" for a, b in zip(word, word[1:]))
