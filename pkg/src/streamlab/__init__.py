"""Cellular-automaton reducibility of infinite words.

Lazy streams, local rules and transducers acting on them, and tools to
estimate, synthesize and refute reductions between streams.
"""

from .streams import (
    Alphabet, BINARY, Stream, IndexCeilingError, StreamError,
    zip_streams, inv, concat_blocks, mutate, drop, cons,
)
from .ca import LocalRule, apply, compose, neighborhood
from .fst import Fst, apply_fst, compile_ca_to_fst, StallError
from .reducer import algorithm1, infer_rule, synthesize, congruent, Verdict, Conflict
from .catalog import build, build_atom
from .expr import parse_expr, build_stream

__version__ = "0.1.0"
