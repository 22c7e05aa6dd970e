"""Truncated power series over Z/2 and the Hecke operators on them.

A :class:`QSeries` is a bit-packed coefficient string together with a
precision N: the coefficients of x^0 .. x^(N-1) are exact, nothing above
is known.  Every operation returns the precision it can actually
guarantee:

========  ==================
add, mul  min of the inputs
u2        N // 2
u3        N // 3
tp        N // p
p3i       N
========  ==================

Bits at or above the precision are never stored, so garbage there cannot
leak into a result.
"""

from __future__ import annotations

import json
import math
import threading
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .gf2poly import BitPoly, _pack, _unpack, clmul, iter_bits
from .semilinear import u_apply

__all__ = [
    "QSeries",
    "PrecisionExhausted",
    "NotAPolynomial",
    "Agreement",
    "series_const",
    "u2",
    "u3",
    "up",
    "tp",
    "p3i",
    "series_of_r_poly",
    "r_poly_of_series",
    "r_powers",
    "check_u3_equals_u",
    "is_prime",
]


class PrecisionExhausted(ValueError):
    """The result would have no valid coefficients."""


class NotAPolynomial(ValueError):
    """A series is not a polynomial in r within the requested degree."""


class Agreement(NamedTuple):
    equal: bool
    precision: int

    def __bool__(self):
        return self.equal


class QSeries:
    """Power series in x over Z/2 known below ``precision``."""

    __slots__ = ("bits", "precision")

    def __init__(self, bits: int, precision: int):
        if precision < 0:
            raise ValueError("precision must be nonnegative")
        bits = bits.bits if isinstance(bits, BitPoly) else int(bits)
        object.__setattr__(self, "precision", int(precision))
        object.__setattr__(self, "bits", bits & ((1 << precision) - 1))

    def __setattr__(self, name, value):
        raise AttributeError("QSeries is immutable")

    @classmethod
    def from_exponents(cls, exponents, precision: int) -> QSeries:
        bits = 0
        for e in exponents:
            if e < precision:
                bits ^= 1 << e
        return cls(bits, precision)

    @classmethod
    def zero(cls, precision: int) -> QSeries:
        return cls(0, precision)

    def exponents(self) -> list[int]:
        return list(iter_bits(self.bits))

    def __getitem__(self, n: int) -> int:
        if n >= self.precision:
            raise IndexError(f"coefficient {n} is beyond precision {self.precision}")
        return (self.bits >> n) & 1

    def is_zero(self) -> bool:
        return self.bits == 0

    @property
    def valuation(self):
        return (self.bits & -self.bits).bit_length() - 1 if self.bits else math.inf

    def truncate(self, precision: int) -> QSeries:
        if precision > self.precision:
            raise ValueError("cannot raise precision")
        return QSeries(self.bits, precision)

    def agrees(self, other: QSeries) -> Agreement:
        n = min(self.precision, other.precision)
        mask = (1 << n) - 1
        return Agreement((self.bits ^ other.bits) & mask == 0, n)

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.agrees(other).equal

    __hash__ = None

    def __add__(self, other: QSeries) -> QSeries:
        return QSeries(self.bits ^ other.bits, min(self.precision, other.precision))

    __sub__ = __add__

    def __mul__(self, other: QSeries) -> QSeries:
        n = min(self.precision, other.precision)
        mask = (1 << n) - 1
        return QSeries(clmul(self.bits & mask, other.bits & mask), n)

    def square(self) -> QSeries:
        """s(x)^2 = s(x^2); reported at the input precision."""
        return QSeries(_dilate(self.bits, 2, self.precision), self.precision)

    def __pow__(self, n: int) -> QSeries:
        result = QSeries(1, self.precision)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base.square()
        return result

    def __repr__(self):
        return f"QSeries({self.to_text()!r}, precision={self.precision})"

    def to_text(self) -> str:
        """Ascending exponent list, e.g. ``"x^1+x^9+x^25"``."""
        if not self.bits:
            return "0"
        return "+".join(f"x^{k}" for k in iter_bits(self.bits))

    @classmethod
    def from_text(cls, text: str, precision: int) -> QSeries:
        text = "".join(text.split())
        if text == "0":
            return cls(0, precision)
        exps = []
        for term in text.split("+"):
            if term == "1":
                exps.append(0)
            elif term == "x":
                exps.append(1)
            elif term.startswith("x^"):
                exps.append(int(term[2:]))
            else:
                raise ValueError(f"malformed term {term!r}")
        return cls.from_exponents(exps, precision)

    def to_dict(self) -> dict:
        return {"precision": self.precision, "bits_hex": self.bits.to_bytes(max(1, (self.bits.bit_length() + 7) // 8), "little").hex()}

    @classmethod
    def from_dict(cls, data: dict) -> QSeries:
        return cls(int.from_bytes(bytes.fromhex(data["bits_hex"]), "little"), int(data["precision"]))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> QSeries:
        return cls.from_dict(json.loads(text))


def _decimate(bits: int, p: int, out_precision: int) -> int:
    # coefficient n of the result is coefficient p*n of the input
    if not bits or out_precision <= 0:
        return 0
    arr = _unpack(bits, bits.bit_length())
    return _pack(arr[::p][:out_precision])


def _dilate(bits: int, p: int, out_precision: int) -> int:
    # coefficient p*n of the result is coefficient n of the input
    if not bits or out_precision <= 0:
        return 0
    n = min(bits.bit_length(), (out_precision - 1) // p + 1)
    if n <= 0:
        return 0
    arr = _unpack(bits, n)
    out = np.zeros(p * (n - 1) + 1, dtype=np.uint8)
    out[::p] = arr
    return _pack(out) & ((1 << out_precision) - 1)


def up(s: QSeries, p: int) -> QSeries:
    """sum a_(pn) x^n, at precision N // p."""
    out = s.precision // p
    if out < 1:
        raise PrecisionExhausted(f"U_{p} of a series with precision {s.precision}")
    return QSeries(_decimate(s.bits, p, out), out)


def u2(s: QSeries) -> QSeries:
    return up(s, 2)


def u3(s: QSeries) -> QSeries:
    return up(s, 3)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def tp(s: QSeries, p: int) -> QSeries:
    """T_p(sum a_n x^n) = sum a_(pn) x^n + sum a_n x^(pn), at precision N // p."""
    if not is_prime(p) or p <= 3:
        raise ValueError(f"T_p needs a prime p > 3, got {p}")
    out = s.precision // p
    if out < 1:
        raise PrecisionExhausted(f"T_{p} of a series with precision {s.precision}")
    return QSeries(_decimate(s.bits, p, out) ^ _dilate(s.bits, p, out), out)


def _residue_mask(n: int, i: int) -> int:
    if n <= i:
        return 0
    arr = np.zeros(n, dtype=np.uint8)
    arr[i::3] = 1
    return _pack(arr)


def p3i(s: QSeries, i: int) -> QSeries:
    """Keep only the exponents congruent to ``i`` mod 3 (i = 1 or 2)."""
    if i not in (1, 2):
        raise ValueError("i must be 1 or 2")
    return QSeries(s.bits & _residue_mask(s.precision, i), s.precision)


def _square_exponents(N: int, odd_only: bool = False):
    n = 1
    while n * n < N:
        if not odd_only or n & 1:
            yield n * n
        n += 1


def series_const(which: str, N: int) -> QSeries:
    """The series r, F, G or D, built from their exponent patterns.

    r = sum_{n>0} x^(n^2) + x^(2n^2) + x^(3n^2) + x^(6n^2)
    F = sum_{n odd} x^(n^2),  G = F(x^3),  D = sum_{n odd, 3 !| n} x^(n^2)
    """
    if N < 1:
        raise ValueError("precision must be positive")
    which = which.strip()
    if which == "r":
        exps = [c * q for q in _square_exponents(N) for c in (1, 2, 3, 6) if c * q < N]
    elif which == "F":
        exps = list(_square_exponents(N, odd_only=True))
    elif which == "G":
        exps = [3 * q for q in _square_exponents(N, odd_only=True) if 3 * q < N]
    elif which == "D":
        exps = [q for q in _square_exponents(N, odd_only=True) if q % 3 == 1]
    else:
        raise ValueError(f"unknown series {which!r}; expected r, F, G or D")
    return QSeries.from_exponents(exps, N)


class _RPowers:
    """r^0, r^1, ... at a fixed precision, grown on demand."""

    def __init__(self, N: int):
        self.N = N
        self._r = series_const("r", N)
        self._pows = [QSeries(1, N)]
        self._lock = threading.Lock()

    def upto(self, k: int) -> list[QSeries]:
        with self._lock:
            pows = self._pows
            while len(pows) <= k:
                j = len(pows)
                if j % 2 == 0:
                    pows.append(pows[j // 2].square())
                else:
                    pows.append(pows[j - 1] * self._r)
        return self._pows


_RPOWERS: dict[int, _RPowers] = {}
_RPOWERS_LOCK = threading.Lock()


def r_powers(N: int, k: int) -> list[QSeries]:
    """``[r^0, ..., r^k]`` as series of precision N (cached)."""
    with _RPOWERS_LOCK:
        table = _RPOWERS.get(N)
        if table is None:
            table = _RPOWERS[N] = _RPowers(N)
    return table.upto(k)[: k + 1]


def series_of_r_poly(f: BitPoly, N: int) -> QSeries:
    """Evaluate the polynomial ``f`` (in r) at the series r, precision N."""
    if N < 1:
        raise ValueError("precision must be positive")
    f = BitPoly(f)
    if not f:
        return QSeries(0, N)
    # r^k starts at x^k, so terms with k >= N vanish below the precision
    usable = f.bits & ((1 << N) - 1)
    if not usable:
        return QSeries(0, N)
    pows = r_powers(N, usable.bit_length() - 1)
    acc = 0
    for k in iter_bits(usable):
        acc ^= pows[k].bits
    return QSeries(acc, N)


def r_poly_of_series(s: QSeries, dmax: int) -> BitPoly:
    """The polynomial f of degree <= dmax whose series agrees with ``s``.

    r^k has lowest term x^k, so the lowest surviving exponent of the
    residual fixes the next monomial.  Raises :class:`NotAPolynomial` if
    that exponent exceeds ``dmax`` before the residual vanishes.
    """
    if dmax >= s.precision:
        raise ValueError(f"dmax={dmax} needs precision > {dmax}, have {s.precision}")
    pows = r_powers(s.precision, dmax) if dmax >= 0 else []
    residual = s.bits
    f = 0
    while residual:
        k = (residual & -residual).bit_length() - 1
        if k > dmax:
            raise NotAPolynomial(f"residual starts at x^{k}, beyond degree bound {dmax}")
        residual ^= pows[k].bits
        f ^= 1 << k
    return BitPoly(f)


def check_u3_equals_u(nmax: int, N: int) -> bool:
    """U_3 on the series of r^n matches U(r^n) for all n <= nmax."""
    if N // 3 <= 2 * nmax:
        raise ValueError(f"need N // 3 > 2 * nmax, got N={N}, nmax={nmax}")
    pows = r_powers(N, nmax)
    out_prec = N // 3
    for n in range(nmax + 1):
        lhs = u3(pows[n])
        rhs = series_of_r_poly(u_apply(BitPoly.monomial(n)), out_prec)
        if not lhs.agrees(rhs):
            return False
    return True
