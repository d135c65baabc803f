"""Stream expressions for the command line.

    expr   := atom | name '(' args ')'
    atom   := catalog name, optionally ':' followed by '/'-separated params

Calls: zip(e,e) inv(e) drop(n,e) cons(w,e) mutate(e, i->a, ...) xor(e)
applyca(rulefile,e) encode(alphabet,e).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from . import catalog
from .ca import apply, read_rule, xor_rule
from .codec import Codec, encode
from .streams import Alphabet, Stream, cons, drop, inv, mutate, zip_streams

__all__ = ["ExprError", "Atom", "Zip", "Inv", "Drop", "Cons", "Mutate", "Xor",
           "ApplyCA", "Encode", "parse_expr", "evaluate", "build_stream"]


class ExprError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at offset {pos}")
        self.pos = pos


@dataclass(frozen=True)
class Atom:
    name: str
    params: tuple[str, ...] = ()


@dataclass(frozen=True)
class Zip:
    a: "Expr"
    b: "Expr"


@dataclass(frozen=True)
class Inv:
    e: "Expr"


@dataclass(frozen=True)
class Drop:
    n: int
    e: "Expr"


@dataclass(frozen=True)
class Cons:
    w: str
    e: "Expr"


@dataclass(frozen=True)
class Mutate:
    e: "Expr"
    edits: tuple[tuple[int, str], ...]


@dataclass(frozen=True)
class Xor:
    e: "Expr"


@dataclass(frozen=True)
class ApplyCA:
    path: str
    e: "Expr"


@dataclass(frozen=True)
class Encode:
    alphabet: str
    e: "Expr"


Expr = Union[Atom, Zip, Inv, Drop, Cons, Mutate, Xor, ApplyCA, Encode]

_CALLS = {"zip": 2, "inv": 1, "drop": 2, "cons": 2, "mutate": None, "xor": 1,
          "applyca": 2, "encode": 2}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise ExprError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def token(self) -> tuple[str, int]:
        self.ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in "(),":
            if self.text[self.pos].isspace():
                break
            self.pos += 1
        if self.pos == start:
            raise ExprError("expected a name or value", start)
        return self.text[start:self.pos], start

    def expr(self) -> Expr:
        tok, at = self.token()
        if self.peek() == "(" and tok in _CALLS:
            self.pos += 1
            return self.call(tok, at)
        if self.peek() == "(":
            raise ExprError(f"unknown function {tok!r}", at)
        name, sep, rest = tok.partition(":")
        if name not in catalog.CATALOG:
            raise ExprError(f"unknown stream {name!r}", at)
        return Atom(name, tuple(rest.split("/")) if sep else ())

    def call(self, name: str, at: int) -> Expr:
        if name == "zip":
            a = self.expr(); self.expect(","); b = self.expr(); node = Zip(a, b)
        elif name == "inv":
            node = Inv(self.expr())
        elif name == "xor":
            node = Xor(self.expr())
        elif name == "drop":
            tok, p = self.token()
            if not tok.isdigit():
                raise ExprError("drop needs a non-negative integer", p)
            self.expect(",")
            node = Drop(int(tok), self.expr())
        elif name == "cons":
            tok, _ = self.token()
            self.expect(",")
            node = Cons(tok, self.expr())
        elif name == "applyca":
            tok, _ = self.token()
            self.expect(",")
            node = ApplyCA(tok, self.expr())
        elif name == "encode":
            tok, _ = self.token()
            self.expect(",")
            node = Encode(tok, self.expr())
        else:
            e = self.expr()
            edits = []
            while self.peek() == ",":
                self.pos += 1
                tok, p = self.token()
                edits.append(_edit(tok, p))
            node = Mutate(e, tuple(edits))
        self.expect(")")
        return node


def _edit(tok: str, pos: int) -> tuple[int, str]:
    for arrow in ("->", "→", "="):
        i, sep, a = tok.partition(arrow)
        if sep:
            if not i.isdigit() or len(a) != 1:
                break
            return int(i), a
    raise ExprError(f"bad edit {tok!r}; write index->letter", pos)


def parse_expr(text: str) -> Expr:
    p = _Parser(text)
    node = p.expr()
    if p.peek():
        raise ExprError("trailing input", p.pos)
    return node


def evaluate(node: Expr) -> Stream:
    if isinstance(node, Atom):
        return catalog.build(node.name, node.params)
    if isinstance(node, Zip):
        return zip_streams(evaluate(node.a), evaluate(node.b))
    if isinstance(node, Inv):
        return inv(evaluate(node.e))
    if isinstance(node, Drop):
        return drop(evaluate(node.e), node.n)
    if isinstance(node, Cons):
        return cons(node.w, evaluate(node.e))
    if isinstance(node, Mutate):
        return mutate(evaluate(node.e), dict(node.edits))
    if isinstance(node, Xor):
        return apply(xor_rule(), evaluate(node.e))
    if isinstance(node, ApplyCA):
        return apply(read_rule(node.path), evaluate(node.e))
    if isinstance(node, Encode):
        return encode(Codec(Alphabet(node.alphabet)), evaluate(node.e))
    raise TypeError(f"not an expression: {node!r}")


def build_stream(text: str) -> Stream:
    return evaluate(parse_expr(text))
