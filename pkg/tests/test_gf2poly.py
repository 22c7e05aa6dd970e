import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from char2hecke.gf2poly import (
    NEG_INF,
    BitPoly,
    _schoolbook,
    _spread_mul,
    add,
    clmul,
    degree,
    from_hex,
    from_text,
    mul,
    poly_divmod,
    substitute_square,
    to_hex,
    to_text,
)

import oracles

F = from_text("t^4+t^3+t^2+t")
G = from_text("t^4+t^3")

polys = st.integers(min_value=0, max_value=(1 << 513) - 1).map(BitPoly)
nonzero = st.integers(min_value=1, max_value=(1 << 513) - 1).map(BitPoly)


def test_add_self_inverse():
    p = from_text("t+1")
    assert add(p, p) == BitPoly(0)


def test_F_plus_G():
    assert add(F, G) == from_text("t^2+t")


def test_c3_plus_c2():
    assert add(from_text("t^2"), from_text("t")) == from_text("t^2+t")


def test_frobenius_square():
    assert mul(from_text("t+1"), from_text("t+1")) == from_text("t^2+1")


def test_F_from_factored_form():
    assert mul(from_text("t"), from_text("t+1") ** 3) == F


def test_F_G_relation():
    assert F ** 4 + G ** 4 + F * G == BitPoly(0)


@pytest.mark.parametrize("g, expected", [
    ("0", "0"),
    ("t+1", "t^2+1"),
    ("t^3+t^2", "t^6+t^4"),
])
def test_substitute_square(g, expected):
    assert substitute_square(from_text(g)) == from_text(expected)


def test_degree():
    assert degree(BitPoly(0)) == NEG_INF
    assert NEG_INF < -1
    assert degree(from_text("t^4")) == 4
    assert degree(from_text("t^5")) == 5


def test_text_forms():
    p = from_text("t^6+t^4+1")
    assert to_text(p) == "t^6+t^4+1"
    assert to_text(BitPoly(0)) == "0"
    assert from_text("t + t") == BitPoly(0)
    assert from_text("r^2+r") == BitPoly(0b110)
    with pytest.raises(ValueError):
        from_text("t^^2")


def test_hex_little_endian():
    assert to_hex(from_text("t^6+t^4+1")) == "51"
    assert to_hex(from_text("t^8")) == "0001"
    assert from_hex("0001") == from_text("t^8")
    assert from_hex(to_hex(BitPoly(0))) == BitPoly(0)


@settings(max_examples=300)
@given(polys)
def test_text_and_hex_round_trip(p):
    assert from_text(to_text(p)) == p
    assert from_hex(to_hex(p)) == p


@settings(max_examples=200)
@given(st.integers(0, (1 << 300) - 1), st.integers(0, (1 << 300) - 1))
def test_mul_matches_coefficient_convolution(a, b):
    assert clmul(a, b) == oracles.naive_mul(a, b)


@settings(max_examples=50)
@given(st.integers(1, (1 << 5000) - 1), st.integers(1, (1 << 3000) - 1))
def test_spread_and_schoolbook_agree(a, b):
    assert _spread_mul(a, b) == _schoolbook(a, b)


@settings(max_examples=1000, deadline=None)
@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a + a == BitPoly(0)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=1000, deadline=None)
@given(polys)
def test_square_is_frobenius(g):
    assert substitute_square(g) == g * g


@settings(max_examples=1000, deadline=None)
@given(nonzero, nonzero)
def test_degree_additive(a, b):
    assert degree(a * b) == degree(a) + degree(b)


@given(st.integers(0, 1 << 200), st.integers(1, 1 << 40))
def test_divmod(a, b):
    q, r = poly_divmod(a, b)
    assert clmul(q, b) ^ r == a
    assert r.bit_length() < b.bit_length()
    assert (q, r) == oracles.naive_divmod(a, b)


def test_composition():
    assert from_text("t^2+t")(G) == G * G + G


def test_immutable():
    with pytest.raises(AttributeError):
        F.bits = 3
