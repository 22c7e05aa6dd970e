"""Kernel spaces of U + I on the odd part of Z/2[r], in g-coordinates.

An element (r^2+r) g(r^2) of M(odd) is represented by its polynomial g.
In these coordinates U + I is the column map t^n -> C_n, so

    K_m = {g : deg g <= 4m+3, sum of C_n over the support of g is 0}.

The echelon basis of K_m has leading terms t^0, t^4, ..., t^(4m).
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass

from .gf2linalg import BitMatrix, IncrementalEchelon, kernel_basis, rank
from .gf2poly import BitPoly, _square, clmul, iter_bits, poly_divmod
from .recurrence import CnStream
from .semilinear import N2Coordinates, decompose_N2

__all__ = [
    "OddElement",
    "KmBasis",
    "c_table",
    "u_plus_i_on_gcoords",
    "u_plus_i_squared",
    "km_basis",
    "kernel_stream",
    "l_basis",
    "squared_kernels",
    "kernel_equality_check",
    "pr1_shape_check",
    "km_report",
]

_R2_PLUS_R = 0b110


@dataclass(frozen=True)
class OddElement:
    """The element (r^2 + r) g(r^2) of M(odd)."""

    g: BitPoly

    def __post_init__(self):
        object.__setattr__(self, "g", BitPoly(self.g))

    @classmethod
    def from_r(cls, f: BitPoly) -> OddElement:
        """Inverse of :meth:`to_r`; raises ValueError outside M(odd)."""
        q, rem = poly_divmod(BitPoly(f).bits, _R2_PLUS_R)
        if rem:
            raise ValueError("not divisible by r^2 + r")
        g = 0
        for e in iter_bits(q):
            if e & 1:
                raise ValueError("quotient by r^2 + r is not a polynomial in r^2")
            g |= 1 << (e // 2)
        return cls(BitPoly(g))

    def to_r(self) -> BitPoly:
        return BitPoly(clmul(_R2_PLUS_R, _square(self.g.bits)))

    @property
    def g_degree(self):
        return self.g.degree

    @property
    def r_degree(self):
        return 2 * self.g.degree + 2 if self.g else self.g.degree

    def __add__(self, other: OddElement) -> OddElement:
        return OddElement(self.g + other.g)


class _CTable:
    def __init__(self):
        self._stream = CnStream(keep_history=True)
        self._lock = threading.Lock()

    def upto(self, nmax: int) -> list[int]:
        with self._lock:
            self._stream[nmax]
        return self._stream.history


_C = _CTable()


def c_table(nmax: int) -> list[int]:
    """Raw bit patterns of C_0..C_nmax (shared, read-only)."""
    return _C.upto(nmax)[: nmax + 1]


def _u_plus_i_bits(g: int) -> int:
    if not g:
        return 0
    table = _C.upto(g.bit_length() - 1)
    acc = 0
    for n in iter_bits(g):
        acc ^= table[n]
    return acc


def u_plus_i_on_gcoords(g: BitPoly) -> BitPoly:
    """g-coordinates of (U + I) applied to (r^2+r) g(r^2)."""
    return BitPoly(_u_plus_i_bits(BitPoly(g).bits))


def u_plus_i_squared(g: BitPoly) -> BitPoly:
    return BitPoly(_u_plus_i_bits(_u_plus_i_bits(BitPoly(g).bits)))


@dataclass(frozen=True)
class KmBasis:
    m: int
    elements: tuple[OddElement, ...]

    @property
    def dim(self) -> int:
        return len(self.elements)

    def gdegrees(self) -> list[int]:
        return [e.g_degree for e in self.elements]

    def rdegrees(self) -> list[int]:
        return [e.r_degree for e in self.elements]

    def coordinates(self, g: BitPoly) -> int | None:
        """Coefficients of ``g`` in this basis (bit j for element j).

        Elements are reduced on the leading positions t^(4j), so the
        coefficient of element j is simply the bit of ``g`` at t^(4j).
        Returns ``None`` when ``g`` is outside the span.
        """
        g = BitPoly(g).bits
        x = 0
        acc = 0
        for j, e in enumerate(self.elements):
            if (g >> (4 * j)) & 1:
                x |= 1 << j
                acc ^= e.g.bits
        return x if acc == g else None

    def combine(self, x: int) -> OddElement:
        acc = 0
        for j in iter_bits(x):
            acc ^= self.elements[j].g.bits
        return OddElement(BitPoly(acc))


def kernel_stream(ncols: int) -> list[int]:
    """Kernel of t^n -> C_n on degree < ncols, as reduced g-polynomials.

    Columns are fed in increasing n; a column that depends on earlier
    ones yields a kernel element with leading term t^n.  The resulting
    basis is then reduced so that no element carries another element's
    leading term (later elements are the only ones that could).
    """
    table = _C.upto(max(ncols - 1, 0))
    echelon = IncrementalEchelon()
    kernel = []
    for n in range(ncols):
        dep = echelon.insert(table[n], label=n)
        if dep is not None:
            g = 1 << n
            for k in dep:
                g ^= 1 << k
            kernel.append(g)
    for j in range(1, len(kernel)):
        for i in range(j):
            if (kernel[j] >> (kernel[i].bit_length() - 1)) & 1:
                kernel[j] ^= kernel[i]
    return kernel


def km_basis(m: int) -> KmBasis:
    """Reduced echelon basis of K_m (g of degree <= 4m+3).

    Raises ArithmeticError if the dimension is not m + 1.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    kernel = kernel_stream(4 * m + 4)
    if len(kernel) != m + 1:
        raise ArithmeticError(f"dim K_{m} = {len(kernel)}, expected {m + 1}")
    return KmBasis(m, tuple(OddElement(BitPoly(g)) for g in kernel))


_L_GENS = (0b10, 0b11, 0b1100)  # t, t+1, t^3+t^2 for G, F, (F+G)^2 G
_G_SQUARED_G = 0b11000  # G^2 = (r^4+r^3)^2 is t^4 + t^3 at t = r^2


def l_basis(m: int) -> list[OddElement]:
    """The 3m+3 elements u_i G^(2n), i <= 2, n <= m, in g-coordinates.

    Ordered by n, then i.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    out = []
    power = 1
    for _ in range(m + 1):
        out.extend(OddElement(BitPoly(clmul(g, power))) for g in _L_GENS)
        power = clmul(power, _G_SQUARED_G)
    return out


def squared_kernels(m: int) -> tuple[list[int], list[int]]:
    """Kernels of (U+I)^2 on L and on L*, both as g-polynomials."""
    ncols = 4 * m + 4
    images = [_u_plus_i_bits(_u_plus_i_bits(1 << n)) for n in range(ncols)]
    if any(img.bit_length() > ncols for img in images):
        raise ArithmeticError("U + I does not stabilize L*")
    on_lstar = kernel_basis(BitMatrix.from_columns(images, ncols))

    gens = [e.g.bits for e in l_basis(m)]
    l_images = [_u_plus_i_bits(_u_plus_i_bits(g)) for g in gens]
    coeffs = kernel_basis(BitMatrix.from_columns(l_images, ncols))
    on_l = []
    for x in coeffs:
        g = 0
        for i in iter_bits(x):
            g ^= gens[i]
        on_l.append(g)
    return on_l, on_lstar


def kernel_equality_check(m: int) -> bool:
    """Both (U+I)^2 kernels have dimension 2m+2 and coincide."""
    on_l, on_lstar = squared_kernels(m)
    if len(on_l) != 2 * m + 2 or len(on_lstar) != 2 * m + 2:
        return False
    ncols = 4 * m + 4
    return rank(BitMatrix(on_l + on_lstar, ncols)) == 2 * m + 2


def pr1_shape_check(m: int, basis: KmBasis | None = None) -> bool:
    """The top element of K_m lies in N2 and its F-coordinate has degree m."""
    basis = km_basis(m) if basis is None else basis
    top = basis.elements[m]
    try:
        coords = decompose_N2(top.to_r())
    except ValueError:
        return False
    return coords.cF.degree == m


def top_n2_coordinates(m: int) -> N2Coordinates:
    return decompose_N2(km_basis(m).elements[m].to_r())


def km_report(m: int) -> dict:
    """``{m, dim, gdegrees, squared_kernels, pr1}`` for one m."""
    basis = km_basis(m)
    return {
        "m": m,
        "dim": basis.dim,
        "gdegrees": basis.gdegrees(),
        "squared_kernels": kernel_equality_check(m),
        "pr1": pr1_shape_check(m, basis),
    }


def km_report_json(m: int) -> str:
    return json.dumps(km_report(m), separators=(",", ":"))
