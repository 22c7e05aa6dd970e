"""Dense polynomials over GF(2), bit-packed into Python integers.

The polynomial b_n t^n + ... + b_1 t + b_0 is stored as the integer
b_n 2^n + ... + b_1 2 + b_0.  Python integers are already word-packed
arbitrary precision bit strings, so XOR and shifts act on whole machine
words at a time.

Most of the heavy lifting elsewhere in the package works on the raw
integers through the underscore helpers below; :class:`BitPoly` is the
value type used at API boundaries.
"""

from __future__ import annotations

import math
import re

import numpy as np

__all__ = [
    "NEG_INF",
    "BitPoly",
    "add",
    "mul",
    "substitute_square",
    "degree",
    "clmul",
    "iter_bits",
    "poly_divmod",
    "from_text",
    "to_text",
    "from_hex",
    "to_hex",
]

#: Degree of the zero polynomial.  Compares below every integer.
NEG_INF = -math.inf

# Above this many set bits in the shorter operand, multiplication goes
# through one big integer product instead of shift-and-XOR.
_SPREAD_THRESHOLD = 256


def iter_bits(a: int):
    """Yield the exponents of the set bits of ``a`` in increasing order."""
    while a:
        low = a & -a
        yield low.bit_length() - 1
        a ^= low


def _schoolbook(a: int, b: int) -> int:
    if a.bit_count() > b.bit_count():
        a, b = b, a
    c = 0
    for k in iter_bits(a):
        c ^= b << k
    return c


def _unpack(a: int, n: int) -> np.ndarray:
    a &= (1 << n) - 1
    raw = np.frombuffer(a.to_bytes((n + 7) // 8, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n]


def _pack(bits: np.ndarray) -> int:
    return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")


def _spread_mul(a: int, b: int) -> int:
    # Each coefficient gets its own slot wide enough that the integer
    # convolution cannot carry between slots; the parity of each slot is
    # then the GF(2) coefficient.
    na, nb = a.bit_length(), b.bit_length()
    width = 16 if min(na, nb) < (1 << 16) else 32
    dtype = np.dtype("<u2") if width == 16 else np.dtype("<u4")
    sa = int.from_bytes(_unpack(a, na).astype(dtype).tobytes(), "little")
    sb = int.from_bytes(_unpack(b, nb).astype(dtype).tobytes(), "little")
    n = na + nb - 1
    prod = (sa * sb).to_bytes(n * (width // 8), "little")
    slots = np.frombuffer(prod, dtype=dtype)
    return _pack((slots & 1).astype(np.uint8))


def clmul(a: int, b: int) -> int:
    """Carry-less product of two bit-packed polynomials."""
    if not a or not b:
        return 0
    if min(a.bit_count(), b.bit_count()) < _SPREAD_THRESHOLD:
        return _schoolbook(a, b)
    return _spread_mul(a, b)


def _square(a: int) -> int:
    if not a:
        return 0
    n = a.bit_length()
    out = np.zeros(2 * n, dtype=np.uint8)
    out[::2] = _unpack(a, n)
    return _pack(out)


def poly_divmod(a: int, b: int) -> tuple[int, int]:
    """Quotient and remainder of ``a`` by nonzero ``b``."""
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    db = b.bit_length() - 1
    q = 0
    while a and a.bit_length() - 1 >= db:
        s = a.bit_length() - 1 - db
        q ^= 1 << s
        a ^= b << s
    return q, a


class BitPoly:
    """Immutable polynomial over GF(2) in one variable.

    Equality and hashing are by value.  ``+`` and ``*`` are the ring
    operations; ``-`` is the same as ``+``.
    """

    __slots__ = ("bits",)

    def __init__(self, bits: int = 0):
        if isinstance(bits, BitPoly):
            bits = bits.bits
        if bits < 0:
            raise ValueError("bit pattern must be nonnegative")
        object.__setattr__(self, "bits", int(bits))

    def __setattr__(self, name, value):
        raise AttributeError("BitPoly is immutable")

    @classmethod
    def monomial(cls, k: int) -> BitPoly:
        return cls(1 << k)

    @classmethod
    def from_exponents(cls, exponents) -> BitPoly:
        bits = 0
        for k in exponents:
            bits ^= 1 << k
        return cls(bits)

    def exponents(self) -> list[int]:
        return list(iter_bits(self.bits))

    @property
    def degree(self):
        return degree(self)

    def __bool__(self):
        return self.bits != 0

    def __eq__(self, other):
        if isinstance(other, BitPoly):
            return self.bits == other.bits
        if isinstance(other, int) and other in (0, 1):
            return self.bits == other
        return NotImplemented

    def __hash__(self):
        return hash(("BitPoly", self.bits))

    def __add__(self, other):
        if not isinstance(other, BitPoly):
            return NotImplemented
        return BitPoly(self.bits ^ other.bits)

    __sub__ = __add__
    __radd__ = __add__

    def __mul__(self, other):
        if isinstance(other, int):
            other = BitPoly(other & 1)
        if not isinstance(other, BitPoly):
            return NotImplemented
        return BitPoly(clmul(self.bits, other.bits))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result, base = 1, self.bits
        while n:
            if n & 1:
                result = clmul(result, base)
            n >>= 1
            if n:
                base = _square(base)
        return BitPoly(result)

    def __lshift__(self, k: int):
        return BitPoly(self.bits << k)

    def __getitem__(self, k: int) -> int:
        return (self.bits >> k) & 1

    def __call__(self, x: BitPoly) -> BitPoly:
        """Evaluate at another polynomial (composition), by Horner's rule."""
        acc = 0
        if not self.bits:
            return BitPoly(0)
        for k in range(self.bits.bit_length() - 1, -1, -1):
            acc = clmul(acc, x.bits)
            if (self.bits >> k) & 1:
                acc ^= 1
        return BitPoly(acc)

    def __repr__(self):
        return f"BitPoly({to_text(self)!r})"

    def __str__(self):
        return to_text(self)


def _bits(a) -> int:
    return a.bits if isinstance(a, BitPoly) else int(a)


def add(a: BitPoly, b: BitPoly) -> BitPoly:
    """Sum of ``a`` and ``b`` (coefficientwise XOR)."""
    return BitPoly(_bits(a) ^ _bits(b))


def mul(a: BitPoly, b: BitPoly) -> BitPoly:
    """Product of ``a`` and ``b``."""
    return BitPoly(clmul(_bits(a), _bits(b)))


def substitute_square(g: BitPoly) -> BitPoly:
    """Return g(t^2), which in characteristic 2 is also g(t)^2."""
    return BitPoly(_square(_bits(g)))


def degree(a: BitPoly):
    """Degree of ``a``; :data:`NEG_INF` for the zero polynomial."""
    bits = _bits(a)
    return bits.bit_length() - 1 if bits else NEG_INF


_TERM = re.compile(r"^(?:(?P<one>1)|(?P<var>[A-Za-z])(?:\^(?P<exp>\d+))?)$")


def to_text(a: BitPoly, var: str = "t") -> str:
    """Descending-exponent text form, e.g. ``"t^6+t^4+1"``."""
    bits = _bits(a)
    if not bits:
        return "0"
    terms = []
    for k in sorted(iter_bits(bits), reverse=True):
        terms.append("1" if k == 0 else var if k == 1 else f"{var}^{k}")
    return "+".join(terms)


def from_text(s: str) -> BitPoly:
    """Parse the text form written by :func:`to_text`.

    Any single-letter variable name is accepted.  Repeated terms cancel.
    """
    s = "".join(s.split())
    if not s:
        raise ValueError("empty polynomial text")
    bits = 0
    for term in s.split("+"):
        if term == "0":
            continue
        match = _TERM.match(term)
        if match is None:
            raise ValueError(f"malformed term {term!r}")
        if match.group("one"):
            k = 0
        else:
            k = int(match.group("exp") or 1)
        bits ^= 1 << k
    return BitPoly(bits)


def to_hex(a: BitPoly) -> str:
    """Hex dump of the coefficient bytes, lowest exponents first.

    Byte i carries the coefficients of t^(8i) .. t^(8i+7), least
    significant bit first.
    """
    bits = _bits(a)
    return bits.to_bytes(max(1, (bits.bit_length() + 7) // 8), "little").hex()


def from_hex(s: str) -> BitPoly:
    """Inverse of :func:`to_hex`."""
    return BitPoly(int.from_bytes(bytes.fromhex(s), "little"))
