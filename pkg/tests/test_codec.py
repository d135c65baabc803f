import pytest
from hypothesis import given, strategies as st

from streamlab.ca import LocalRule, apply, const_rule, identity_rule, periodic_rule
from streamlab.codec import (
    NAIVE_CODE, Codec, DecodeError, decode, encode, naive_encode, parse_gamma,
    transport_rule,
)
from streamlab.reducer import synthesize
from streamlab.streams import (
    BINARY, Alphabet, AlphabetError, Stream, concat_blocks, constant, from_word,
)

ABC = Alphabet("ABC")
CODEC = Codec(ABC)


def abc_periodic(word: str) -> Stream:
    return from_word(ABC, "", word)


def test_block_shape():
    assert (CODEC.d, CODEC.tail, CODEC.block_len) == (2, 5, 9)
    assert CODEC.phi == {"A": "100100000", "B": "101100000", "C": "110100000"}
    assert encode(CODEC, constant(ABC, "A")).prefix(9) == "100100000"
    assert Codec(BINARY).block_len == 1 + 3 + 2


def test_decode_round_trip_and_injectivity():
    s = from_word(ABC, "CAB", "BCA")
    assert decode(CODEC, encode(CODEC, s)).prefix(30) == s.prefix(30)
    assert encode(CODEC, constant(ABC, "B")).prefix(18) != encode(CODEC, constant(ABC, "C")).prefix(18)


def test_decode_malformed():
    bad = constant(BINARY, "0")
    with pytest.raises(DecodeError) as e:
        decode(CODEC, bad).letter_at(0)
    assert e.value.block == 0
    # 1 11 1 00000 is not a codeword of the default gamma
    with pytest.raises(DecodeError):
        CODEC.decode_block("111100000")


def test_gamma_override():
    c = Codec(ABC, parse_gamma("A=11,B=01,C=10"))
    assert c.phi["A"] == "111100000"
    with pytest.raises(ValueError):
        Codec(ABC, {"A": "00", "B": "00", "C": "01"})
    with pytest.raises(ValueError):
        Codec(ABC, {"A": "0", "B": "01", "C": "10"})
    with pytest.raises(ValueError):
        parse_gamma("A00")


def test_encode_letters_must_fit():
    with pytest.raises(AlphabetError):
        encode(CODEC, constant(Alphabet("xy"), "x"))


def test_transport_identity_and_const():
    s = from_word(ABC, "BCCA", "ABAC")
    e = encode(CODEC, s)
    assert apply(transport_rule(CODEC, identity_rule(ABC)), e).prefix(300) == e.prefix(300)
    r = transport_rule(CODEC, const_rule(ABC, "C"))
    assert apply(r, e).prefix(300) == encode(CODEC, constant(ABC, "C")).prefix(300)


def test_transport_periodic():
    r = periodic_rule("BAAA", "BA", ABC)
    got = apply(transport_rule(CODEC, r), encode(CODEC, abc_periodic("BAAA"))).prefix(400)
    assert got == encode(CODEC, abc_periodic("BA")).prefix(400)


def test_transport_generic_rule():
    src = Stream.from_function(ABC, lambda i: "ABC"[(bin(i).count("1") + i) % 3])
    rule = LocalRule(ABC, 1, lambda w: "ABC"[sum(ABC.index(x) for x in w if x != "#") % 3])
    tr = transport_rule(CODEC, rule)
    assert tr.radius == max(CODEC.block_len - 1, CODEC.block_len + CODEC.d - 1)
    want = encode(CODEC, apply(rule, src)).prefix(600)
    assert apply(tr, encode(CODEC, src)).prefix(600) == want


def test_transport_alphabet_mismatch():
    with pytest.raises(AlphabetError):
        transport_rule(CODEC, identity_rule(BINARY))


def test_naive_examples():
    assert NAIVE_CODE["A"] == "00"
    assert naive_encode(constant(ABC, "B")).prefix(6) == "010101"
    assert naive_encode(constant(ABC, "C")).prefix(6) == "101010"
    with pytest.raises(AlphabetError):
        naive_encode(constant(Alphabet("AD"), "D"))


def abc_blocks(x: str, y: str) -> Stream:
    """x y xx yy xxx yyy ..."""
    return concat_blocks(ABC, lambda i: x * i + y * i)


def test_naive_images_of_swapped_blocks_are_complements():
    # B and C code to complementary pairs, so swapping them is a radius-0 bit flip
    bc, cb = naive_encode(abc_blocks("B", "C")), naive_encode(abc_blocks("C", "B"))
    flip = {"0": "1", "1": "0"}
    assert "".join(flip[x] for x in bc.prefix(400)) == cb.prefix(400)
    assert synthesize(bc, cb, 6, 4000).radius == 0


def test_naive_encoding_breaks_an_equivalence():
    # B->B, C->A is radius 0 and so is its inverse, but the images stay apart
    bc, ba = abc_blocks("B", "C"), abc_blocks("B", "A")
    assert synthesize(bc, ba, 0, 2000).answer and synthesize(ba, bc, 0, 2000).answer
    v = synthesize(naive_encode(bc), naive_encode(ba), 6, 4000)
    assert not v.answer and [w.radius for w in v.witnesses] == list(range(7))


TAUS = {k: "B" + "A" * (k - 1) for k in (2, 3, 4, 6)}


@pytest.mark.parametrize("m", sorted(TAUS))
@pytest.mark.parametrize("n", sorted(TAUS))
def test_codec_preserves_verdicts(m, n):
    L = CODEC.block_len
    plain = synthesize(abc_periodic(TAUS[m]), abc_periodic(TAUS[n]), m, 40 * m)
    enc = synthesize(encode(CODEC, abc_periodic(TAUS[m])), encode(CODEC, abc_periodic(TAUS[n])),
                     m * L + CODEC.d, 40 * m * L)
    assert plain.answer == enc.answer == (m % n == 0)


@given(st.text("ABC", max_size=8), st.text("ABC", min_size=1, max_size=6))
def test_decode_inverts_encode(pre, per):
    s = from_word(ABC, pre, per)
    n = len(pre) + 2 * len(per)
    assert decode(CODEC, encode(CODEC, s)).prefix(n) == s.prefix(n)


@given(st.text("ABC", max_size=6), st.text("ABC", min_size=1, max_size=4))
def test_transport_commutes_with_encode(pre, per):
    s = from_word(ABC, pre, per)
    rule = LocalRule(ABC, 1, lambda w: "C" if w[0] == w[2] else w[1])
    L = CODEC.block_len
    n = (len(pre) + 3 * len(per)) * L
    got = apply(transport_rule(CODEC, rule), encode(CODEC, s)).prefix(n)
    assert got == encode(CODEC, apply(rule, s)).prefix(n)
