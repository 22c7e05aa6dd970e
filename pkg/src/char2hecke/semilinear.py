"""The operator U on Z/2[r] and the structures built around it.

Elements of Z/2[r] are plain :class:`~char2hecke.gf2poly.BitPoly` values
read in the variable r.  The two distinguished elements are

    F = r (r+1)^3 = r^4 + r^3 + r^2 + r,    G = r^3 (r+1) = r^4 + r^3.

U is the Z/2-linear map with U(G f) = F U(f) fixing 1, r, r^2 and sending
r^3 to r^3 + r^2 + r.  Writing r^(n+4) = r^(n+3) + G r^n and applying U
gives the three-term recursion used to tabulate U on monomials.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from .gf2linalg import BitMatrix, IncrementalEchelon, solve
from .gf2poly import BitPoly, clmul, iter_bits, poly_divmod, to_text

__all__ = [
    "RElement",
    "F",
    "G",
    "constants",
    "u_monomial_table",
    "u_apply",
    "u_apply_bits",
    "alpha_apply",
    "t_apply",
    "f_coordinates",
    "GDecomposition",
    "decompose_over_G",
    "N2Coordinates",
    "NotInN2Error",
    "decompose_N2",
    "pr1",
    "r_text",
]

RElement = BitPoly

_F = 0b11110
_G = 0b11000
F = BitPoly(_F)
G = BitPoly(_G)


def constants() -> tuple[BitPoly, BitPoly]:
    """Return ``(F, G)``."""
    return F, G


def r_text(f: BitPoly) -> str:
    return to_text(f, "r")


def _times_F(a: int) -> int:
    return (a << 4) ^ (a << 3) ^ (a << 2) ^ (a << 1)


class _MonomialTable:
    """U(r^n) for n = 0, 1, ..., grown on demand and never modified."""

    def __init__(self):
        self._values = [1, 0b10, 0b100, 0b1110]
        self._lock = threading.Lock()

    def upto(self, nmax: int) -> list[int]:
        if nmax >= len(self._values):
            with self._lock:
                vals = self._values
                while len(vals) <= nmax:
                    n = len(vals) - 4
                    vals.append(vals[n + 3] ^ _times_F(vals[n]))
        return self._values


_TABLE = _MonomialTable()


def u_monomial_table(nmax: int) -> list[BitPoly]:
    """``[U(r^0), ..., U(r^nmax)]``."""
    if nmax < 0:
        raise ValueError("nmax must be nonnegative")
    vals = _TABLE.upto(nmax)
    return [BitPoly(v) for v in vals[: nmax + 1]]


def u_apply_bits(f: int) -> int:
    """U on a raw bit-packed element."""
    if not f:
        return 0
    table = _TABLE.upto(f.bit_length() - 1)
    acc = 0
    for k in iter_bits(f):
        acc ^= table[k]
    return acc


def u_apply(f: BitPoly) -> BitPoly:
    """U(f), by linear extension of the monomial table."""
    return BitPoly(u_apply_bits(BitPoly(f).bits))


def alpha_apply(p: BitPoly) -> BitPoly:
    """alpha(p(F)) = p(G): the abstract polynomial ``p`` evaluated at G."""
    return BitPoly(p)(G)


def t_apply(p: BitPoly) -> BitPoly:
    """T(p(F)) = U(p(F)) + p(G), returned as an element of Z/2[r].

    ``p`` is the abstract one-variable polynomial; use
    :func:`f_coordinates` to read the result back in powers of F.
    """
    p = BitPoly(p)
    return BitPoly(u_apply_bits(p(F).bits) ^ p(G).bits)


class _PowerBasis:
    """Echelon structure over the powers of a fixed element.

    Powers of F have pairwise distinct degrees 4k, so the top-bit echelon
    is triangular and membership queries are exact.
    """

    def __init__(self, base: int):
        self._base = base
        self._echelon = IncrementalEchelon()
        self._last = 1
        self._n = -1
        self._lock = threading.Lock()

    def ensure(self, degree_bound: int):
        with self._lock:
            while self._n < 0 or self._last.bit_length() - 1 <= degree_bound:
                if self._n >= 0:
                    self._last = clmul(self._last, self._base)
                self._n += 1
                if self._echelon.insert(self._last, label=self._n) is not None:
                    raise ArithmeticError("powers of the base are dependent")

    def coordinates(self, f: int) -> int | None:
        self.ensure(f.bit_length())
        labels = self._echelon.express(f)
        if labels is None:
            return None
        out = 0
        for k in labels:
            out ^= 1 << k
        return out


_F_POWERS = _PowerBasis(_F)


def f_coordinates(f: BitPoly) -> BitPoly | None:
    """The polynomial p with p(F) = f, or ``None`` if f is not in Z/2[F]."""
    coords = _F_POWERS.coordinates(BitPoly(f).bits)
    return None if coords is None else BitPoly(coords)


@dataclass(frozen=True)
class GDecomposition:
    """f = g0(G) + r g1(G) + r^2 g2(G) + r^3 g3(G)."""

    g0: BitPoly
    g1: BitPoly
    g2: BitPoly
    g3: BitPoly

    def parts(self) -> tuple[BitPoly, BitPoly, BitPoly, BitPoly]:
        return (self.g0, self.g1, self.g2, self.g3)

    def recompose(self) -> BitPoly:
        acc = 0
        for i, g in enumerate(self.parts()):
            acc ^= g(G).bits << i
        return BitPoly(acc)


def decompose_over_G(f: BitPoly) -> GDecomposition:
    """Coordinates of ``f`` over Z/2[G] in the basis 1, r, r^2, r^3.

    Long division by G = r^4 + r^3 is exactly the rewriting
    r^k -> r^(k-4) (G + r^3) applied from the top; the successive
    remainders give the coefficients of G^0, G^1, ...
    """
    f = BitPoly(f).bits
    gs = [0, 0, 0, 0]
    j = 0
    while f:
        f, rem = poly_divmod(f, _G)
        for i in range(4):
            if (rem >> i) & 1:
                gs[i] |= 1 << j
        j += 1
    return GDecomposition(*(BitPoly(g) for g in gs))


@dataclass(frozen=True)
class N2Coordinates:
    """f = cG(G^2) G + cF(G^2) F + cF2G(G^2) F^2 G."""

    cG: BitPoly
    cF: BitPoly
    cF2G: BitPoly

    def recompose(self) -> BitPoly:
        G2 = G * G
        F2G = F * F * G
        return self.cG(G2) * G + self.cF(G2) * F + self.cF2G(G2) * F2G

    def as_tuple(self) -> tuple[BitPoly, BitPoly, BitPoly]:
        return (self.cG, self.cF, self.cF2G)


class NotInN2Error(ValueError):
    """The element is not a Z/2[G^2]-combination of G, F, F^2 G."""


def _n2_rows(nmax: int) -> list[int]:
    G2 = clmul(_G, _G)
    gens = [_G, _F, clmul(clmul(_F, _F), _G)]
    rows = []
    power = 1
    for _ in range(nmax + 1):
        rows.extend(clmul(power, g) for g in gens)
        power = clmul(power, G2)
    return rows


def decompose_N2(f: BitPoly) -> N2Coordinates:
    """Coordinates of ``f`` in N2 over Z/2[G^2] with basis G, F, F^2 G.

    Raises :class:`NotInN2Error` if ``f`` is outside N2.
    """
    f = BitPoly(f)
    if not f:
        return N2Coordinates(BitPoly(0), BitPoly(0), BitPoly(0))
    # G^(2n) G, G^(2n) F, G^(2n) F^2 G all have degree >= 8n + 4, so no
    # generator with 8n + 4 > deg f can appear.
    nmax = max(0, (f.bits.bit_length() - 1) // 8)
    rows = _n2_rows(nmax)
    ncols = max(max(r.bit_length() for r in rows), f.bits.bit_length())
    x = solve(BitMatrix(rows, ncols), f.bits)
    if x is None:
        raise NotInN2Error(f"{r_text(f)} is not in N2")
    coords = [0, 0, 0]
    for idx in iter_bits(x):
        n, which = divmod(idx, 3)
        coords[which] |= 1 << n
    return N2Coordinates(*(BitPoly(c) for c in coords))


def pr1(coords: N2Coordinates) -> BitPoly:
    """Projection N2/N1 -> K1/N1: the F-coordinate, as a polynomial in G^2."""
    return coords.cF
