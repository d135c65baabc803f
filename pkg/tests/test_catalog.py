from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from conftest import PD16, TM16
from streamlab.catalog import (
    CATALOG, MEPHISTO_PREFIX, SIERPINSKI_PREFIX, CatalogError, algoctr, build,
    build_atom, diag, fig3, hat, infer_alphabet, maximal_variant, mephisto, mu, primes,
    sierpinski, sparse, tau, unipair,
)
from streamlab.reducer import infer_rule, Conflict
from streamlab.streams import BINARY, Alphabet, StreamError, constant


def test_build_known_prefixes():
    assert build("tm").prefix(16) == TM16
    assert build("pd").prefix(16) == PD16
    assert build("periodic", ["011101"]).prefix(12) == "011101011101"


def test_build_atom_syntax():
    assert build_atom("tau:3").prefix(7) == "1001001"
    assert build_atom("ultper:11/0").prefix(4) == "1100"
    assert build_atom("periodic:ABC").alphabet == Alphabet("ABC")
    assert build_atom("algoctr:1/2/2").prefix(40) == algoctr(Fraction(1, 2), 2).prefix(40)
    assert build_atom("algoctr:3/2/2").prefix(40) == algoctr(Fraction(3, 2), 2).prefix(40)


@pytest.mark.parametrize("text", ["nope", "tau", "tau:x", "sparse:cubic", "diag:c",
                                  "periodic:", "tm:1", "algoctr:1"])
def test_build_errors(text):
    with pytest.raises(CatalogError):
        build_atom(text)


def test_every_entry_builds():
    samples = {"periodic": ["01"], "ultper": ["1", "0"], "tau": ["2"], "sparse": ["linear"],
               "sigma_weak": ["2"], "mu": ["1"], "diag": ["a"], "fig3": ["src"],
               "unipair": ["a"], "algoctr": ["1", "2"],
               "maximal_variant": ["zeros", "00000", "0", "all"]}
    for name in CATALOG:
        s = build(name, samples.get(name, []))
        assert len(s.prefix(16)) == 16


def test_sparse_prefix():
    assert sparse("linear").prefix(15) == "110100100010000"
    assert sparse("square").prefix(12) == "110100001000"
    assert sparse("pow2").prefix(12) == "101001000010"


def test_mephisto_quote():
    assert mephisto().prefix(16) == MEPHISTO_PREFIX


def test_sierpinski_fixture_ends():
    s = sierpinski()
    assert s.prefix(17) == SIERPINSKI_PREFIX
    with pytest.raises(StreamError):
        s.letter_at(17)


def test_primes():
    p = primes().prefix(30)
    assert [i for i, a in enumerate(p) if a == "1"] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_diag_matches_quoted_blocks():
    assert diag("a").prefix(3 + 9) == "001" + "000000010"
    assert diag("b").prefix(3 + 9) == "010" + "000010000"


def test_fig3_blocks():
    # xi = (001)^w, so xi(1)=0, xi(2)=1; block i is 0^{i+1} 1 xi(i+1) or xi(i)
    assert fig3("src").prefix(3 + 4 + 5) == "010" + "0011" + "00010"
    assert fig3("dst").prefix(3 + 4 + 5) == "010" + "0010" + "00011"


def test_mu_blocks():
    # block periods for t = 1..6 are 2, 2, 3, 2, 3, 4
    assert mu(1).prefix(1 + 2 + 3 + 4) == "1" + "10" + "100" + "1010"
    assert mu(2).prefix(1 + 2 + 3 + 4) == "1" + "11" + "100" + "1111"
    assert mu(2).prefix(21)[10:] == "10010" + "100010"
    assert mu(3).prefix(21)[10:] == "11111" + "100010"


def test_algoctr_blocks():
    s = algoctr(Fraction(1), 2).prefix(3 + 9 + 33)
    assert s == "001" + "0" * 8 + "1" + "0" * 32 + "1"


def test_hat_and_maximal_variant():
    assert hat("01") == "1011000"
    base = constant(BINARY, "0")
    s = maximal_variant(base, "000", "", "even")
    assert hat("") == "110"
    assert s.prefix(12) == "110" "000" "110" "000"
    with pytest.raises(CatalogError):
        maximal_variant(base, "0000", "", "all")


@pytest.mark.parametrize("k", range(1, 33))
def test_tau_minimal_period(k):
    p = tau(k).prefix(4 * k)
    assert all(p[i] == p[i + k] for i in range(3 * k))
    for d in range(1, k):
        assert any(p[i] != p[i + d] for i in range(4 * k - d))


@pytest.mark.parametrize("n", range(9))
def test_diag_conflicts_both_ways(n):
    h = 10 * (6 * n + 3) ** 2
    assert isinstance(infer_rule(diag("a"), diag("b"), n, h), Conflict)
    assert isinstance(infer_rule(diag("b"), diag("a"), n, h), Conflict)


def test_unipair_covers_short_pairs():
    a = unipair("a").prefix(80000)
    b = unipair("b").prefix(80000)
    for k in range(1, 5):
        want = {(x, y) for x in map("".join, product("01", repeat=k))
                for y in map("".join, product("01", repeat=k))}
        seen = {(a[i:i + k], b[i:i + k]) for i in range(len(a) - k)}
        assert want <= seen


@pytest.mark.parametrize("law", ["linear", "square", "pow2"])
def test_sparse_gaps_grow(law):
    # after the n-th 1, every 1 is followed by at least c(n) zeros
    s = sparse(law).prefix(5000)
    ones = [i for i, a in enumerate(s) if a == "1"]
    gaps = [b - a - 1 for a, b in zip(ones, ones[1:])]
    assert gaps == sorted(gaps)
    assert gaps[:4] == {"linear": [0, 1, 2, 3], "square": [0, 1, 4, 9],
                        "pow2": [1, 2, 4, 8]}[law]


@given(st.integers(0, 3000))
def test_mephisto_is_a_fixed_point(i):
    s = mephisto()
    image = {"0": "001", "1": "110"}
    assert s.letter_at(i) == image[s.letter_at(i // 3)][i % 3] or i == 0


def test_infer_alphabet():
    assert infer_alphabet("0", "1") == BINARY
    assert infer_alphabet("1") == BINARY
    assert infer_alphabet("CAB") == Alphabet("ABC")
    assert infer_alphabet("A") == Alphabet("AB")
