"""Hecke action on the kernel K and a basis adapted to T_7 and T_13.

Elements of K are handled in two forms at once: as polynomials in r
(through the reduced echelon basis of some K_m) and as truncated power
series in x.  Hecke operators act on the series; results are pulled back
to exact polynomials with :func:`~char2hecke.qseries.r_poly_of_series`,
so every matrix below is exact and precision only matters for the
pull-back step.

With X = T_7 and Y = T_13, an adapted grid is a family m_{i,j} in K with

    m_{0,0} = F + G,
    X m_{i,j} = m_{i-1,j}  (0 when i = 0),
    Y m_{i,j} = m_{i,j-1}  (0 when j = 0).
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field

from .gf2linalg import BitMatrix, IncrementalEchelon, kernel_basis, solve
from .gf2poly import BitPoly, iter_bits, to_hex
from .kernelspaces import KmBasis, OddElement, km_basis
from .qseries import (
    NotAPolynomial,
    QSeries,
    is_prime,
    p3i,
    r_poly_of_series,
    series_const,
    series_of_r_poly,
    tp,
    u2,
    u3,
)
from .semilinear import F, G, decompose_N2

__all__ = [
    "ImageEscapesModel",
    "InsufficientModel",
    "NoConsistentSeries",
    "KFiniteModel",
    "build_k_model",
    "default_precision",
    "AdaptedGrid",
    "adapted_grid",
    "build_adapted",
    "tp_as_xy_series",
    "StabilizationReport",
    "stabilization_checks",
    "pr1_equivariance",
]

log = logging.getLogger(__name__)

X_PRIME = 7
Y_PRIME = 13


class ImageEscapesModel(ArithmeticError):
    """T_p of a basis element is not in the modeled K_m."""


class InsufficientModel(ArithmeticError):
    """The grid cannot be extended inside the current K_m."""


class NoConsistentSeries(ArithmeticError):
    """No power series in X, Y reproduces T_p on the grid."""


def default_precision(m: int, pmax: int = Y_PRIME) -> int:
    """Precision leaving N // pmax at twice the top r-degree 8m+2 (plus slack)."""
    return pmax * (16 * m + 8)


@dataclass
class KFiniteModel:
    """K_m with its series and the Hecke matrices computed so far.

    Matrices act on coordinate vectors: bit j stands for basis element j,
    and column j of ``hecke(p)`` holds the coordinates of T_p(element j).
    """

    m: int
    N: int
    basis: KmBasis
    series_basis: list[QSeries]
    _hecke: dict[int, BitMatrix] = field(default_factory=dict, repr=False)

    @property
    def dim(self) -> int:
        return self.basis.dim

    @property
    def degree_bound(self) -> int:
        return 8 * self.m + 2

    def element(self, x: int) -> OddElement:
        return self.basis.combine(x)

    def coordinates(self, f: OddElement) -> int | None:
        return self.basis.coordinates(f.g)

    def series(self, x: int) -> QSeries:
        acc = QSeries(0, self.N)
        for j in iter_bits(x):
            acc = acc + self.series_basis[j]
        return acc

    def pull_back(self, s: QSeries, dmax: int | None = None) -> BitPoly:
        """Exact polynomial in r behind a series known to lie in K_m."""
        dmax = self.degree_bound if dmax is None else dmax
        if s.precision <= dmax:
            raise ValueError(f"precision {s.precision} too small for degree bound {dmax}")
        return r_poly_of_series(s, dmax)

    def apply_tp(self, f: OddElement, p: int) -> OddElement:
        """T_p(f) computed on the series and reconstructed exactly."""
        image = tp(series_of_r_poly(f.to_r(), self.N), p)
        try:
            poly = self.pull_back(image)
            return OddElement.from_r(poly)
        except (NotAPolynomial, ValueError) as exc:
            raise ImageEscapesModel(f"T_{p} image leaves K_{self.m}: {exc}") from exc

    def hecke(self, p: int) -> BitMatrix:
        if p not in self._hecke:
            if self.N // p <= self.degree_bound:
                raise ValueError(f"precision {self.N} too small for T_{p} on K_{self.m}")
            cols = []
            for j, e in enumerate(self.basis.elements):
                image = self.apply_tp(e, p)
                x = self.coordinates(image)
                if x is None:
                    raise ImageEscapesModel(f"T_{p} of element {j} is outside K_{self.m}")
                cols.append(x)
            self._hecke[p] = BitMatrix.from_columns(cols, self.dim)
        return self._hecke[p]

    @property
    def X_matrix(self) -> BitMatrix:
        return self.hecke(X_PRIME)

    @property
    def Y_matrix(self) -> BitMatrix:
        return self.hecke(Y_PRIME)

    def annihilation_ok(self) -> bool:
        """Every basis series is killed by U_2 and by U_3 + I."""
        for s in self.series_basis:
            if not u2(s).is_zero():
                return False
            if not u3(s).agrees(s):
                return False
        return True


def build_k_model(m: int, N: int | None = None) -> KFiniteModel:
    """K_m as a finite model at series precision N (default :func:`default_precision`)."""
    N = default_precision(m) if N is None else N
    if N // Y_PRIME <= 8 * m + 2:
        raise ValueError(f"N // 13 must exceed 8m+2 = {8 * m + 2}, got N={N}")
    basis = km_basis(m)
    series = [series_of_r_poly(e.to_r(), N) for e in basis.elements]
    model = KFiniteModel(m, N, basis, series)
    if not model.annihilation_ok():
        raise ArithmeticError("a basis element of K_m is not killed by U_2 and U_3 + I")
    return model


def is_nilpotent(M: BitMatrix) -> bool:
    P = M
    for _ in range(M.ncols + 1):
        if P.is_zero():
            return True
        P = P @ M
    return P.is_zero()


@dataclass
class AdaptedGrid:
    """Entries m_{i,j} (i + j <= d) as coordinate vectors in a model."""

    d: int
    model: KFiniteModel
    coords: dict[tuple[int, int], int]

    def element(self, i: int, j: int) -> OddElement:
        return self.model.element(self.coords[i, j])

    def keys(self) -> list[tuple[int, int]]:
        return sorted(self.coords, key=lambda ij: (ij[0] + ij[1], ij[0]))

    def manifest(self) -> dict:
        return {
            "d": self.d,
            "m": self.model.m,
            "entries": [
                {"i": i, "j": j, "g_hex": to_hex(self.element(i, j).g)} for i, j in self.keys()
            ],
        }

    def manifest_json(self) -> str:
        return json.dumps(self.manifest(), separators=(",", ":"))

    def verify_exact(self) -> list[str]:
        """Recheck every shift relation from the elements themselves.

        Each T_7 / T_13 image is recomputed on the series of the entry and
        pulled back to a polynomial in r, then compared with the expected
        neighbour.  Returns a transcript line per relation; raises
        AssertionError on the first mismatch.
        """
        lines = []
        zero = BitPoly(0)
        for i, j in self.keys():
            f = self.element(i, j)
            for p, (ti, tj) in ((X_PRIME, (i - 1, j)), (Y_PRIME, (i, j - 1))):
                got = self.model.apply_tp(f, p).to_r()
                want = self.element(ti, tj).to_r() if ti >= 0 and tj >= 0 else zero
                name = "X" if p == X_PRIME else "Y"
                target = f"m[{ti},{tj}]" if ti >= 0 and tj >= 0 else "0"
                if got != want:
                    raise AssertionError(f"{name} m[{i},{j}] != {target}")
                lines.append(f"{name} m[{i},{j}] = {target}  ok")
        return lines


def _joint_system(model: KFiniteModel) -> BitMatrix:
    # rows of X on top of rows of Y: A v = (X v, Y v)
    X, Y = model.X_matrix, model.Y_matrix
    return BitMatrix(X.rows + Y.rows, model.dim)


def _reduced_kernel(A: BitMatrix) -> list[int]:
    ech = IncrementalEchelon()
    for v in kernel_basis(A):
        ech.insert(v)
    vecs = [row for row, _ in (ech._pivots[k] for k in sorted(ech._pivots, reverse=True))]
    # fully reduce so each pivot bit appears in exactly one vector
    for a in range(len(vecs)):
        top = vecs[a].bit_length() - 1
        for b in range(len(vecs)):
            if b != a and (vecs[b] >> top) & 1:
                vecs[b] ^= vecs[a]
    return vecs


def adapted_grid(d: int, model: KFiniteModel) -> AdaptedGrid:
    """Grid m_{i,j}, i + j <= d, inside ``model``.

    Each entry solves X v = m_{i-1,j}, Y v = m_{i,j-1} (zero targets on
    the boundary).  Solutions differ by the joint kernel of X and Y; the
    representative with no bits on the kernel's pivot positions is taken.
    Raises :class:`InsufficientModel` when some system has no solution.
    """
    n = model.dim
    m00 = model.coordinates(OddElement(BitPoly(1)))
    if m00 is None:
        raise ArithmeticError("F + G is not in the model")
    A = _joint_system(model)
    At = A.transpose()
    kernel = _reduced_kernel(A)
    coords = {(0, 0): m00}
    for grade in range(1, d + 1):
        for i in range(grade, -1, -1):
            j = grade - i
            tx = coords[i - 1, j] if i > 0 else 0
            ty = coords[i, j - 1] if j > 0 else 0
            v = solve(At, tx | (ty << n))
            if v is None:
                raise InsufficientModel(f"m[{i},{j}] not found in K_{model.m}")
            for k in kernel:
                if (v >> (k.bit_length() - 1)) & 1:
                    v ^= k
            coords[i, j] = v
    return AdaptedGrid(d, model, coords)


def build_adapted(d: int, m: int | None = None, max_doublings: int = 4) -> AdaptedGrid:
    """Grade-d grid, starting from K_{4d+4} and doubling m when too small."""
    m = 4 * d + 4 if m is None else m
    for _ in range(max_doublings + 1):
        model = build_k_model(m)
        try:
            return adapted_grid(d, model)
        except (InsufficientModel, ImageEscapesModel) as exc:
            log.info("K_%d too small for grade %d (%s); doubling", m, d, exc)
            m *= 2
    raise InsufficientModel(f"no grade-{d} grid found up to K_{m // 2}")


def tp_as_xy_series(p: int, d: int, grid: AdaptedGrid) -> dict[tuple[int, int], int]:
    """Coefficients u_{a,b} with T_p = sum u_{a,b} X^a Y^b on the grid.

    u_{a,b} is read off as the m_{0,0}-coefficient of T_p m_{a,b}; the
    whole grid is then checked against the resulting series.  Returns the
    nonzero coefficients (all with 1 <= a + b <= d).
    """
    if not is_prime(p) or p <= 3:
        raise ValueError(f"p must be a prime > 3, got {p}")
    if grid.d < d:
        raise ValueError(f"grid has grade {grid.d} < {d}")
    model = grid.model
    Tp = model.hecke(p)
    keys = [k for k in grid.keys() if k[0] + k[1] <= d]
    span = BitMatrix([grid.coords[k] for k in keys], model.dim)

    def in_grid(v: int) -> dict[tuple[int, int], int]:
        x = solve(span, v)
        if x is None:
            raise NoConsistentSeries(f"T_{p} image leaves the grid span")
        return {keys[i]: 1 for i in iter_bits(x)}

    u = {}
    for a, b in keys:
        if in_grid(Tp.apply(grid.coords[a, b])).get((0, 0)):
            u[a, b] = 1
    if u.get((0, 0)):
        raise NoConsistentSeries(f"T_{p} has a constant term")
    for i, j in keys:
        want = 0
        for a, b in u:
            if a <= i and b <= j:
                want ^= grid.coords[i - a, j - b]
        if Tp.apply(grid.coords[i, j]) != want:
            raise NoConsistentSeries(f"T_{p} m[{i},{j}] disagrees with the series")
    return u


def series_json(p: int, d: int, u: dict[tuple[int, int], int]) -> str:
    return json.dumps({"p": p, "d": d, "coeffs": sorted([a, b] for a, b in u)}, separators=(",", ":"))


def pr1_equivariance(grid: AdaptedGrid, primes=(X_PRIME, Y_PRIME)) -> bool:
    """pr1(T_p f) equals T_p acting on pr1(f) in K1/N1, for every grid entry."""
    model = grid.model
    G2 = G * G
    for key in grid.keys():
        f = grid.element(*key)
        cF = decompose_N2(f.to_r()).cF
        for p in primes:
            lhs = decompose_N2(model.apply_tp(f, p).to_r()).cF
            k1 = cF(G2) * F
            image = tp(series_of_r_poly(k1, model.N), p)
            dmax = 8 * max(cF.degree, 0) + 4
            if image.precision <= dmax:
                raise ValueError("precision too small to pull back the K1 image")
            rhs = decompose_N2(r_poly_of_series(image, dmax)).cF
            if lhs != rhs:
                return False
    return True


@dataclass
class StabilizationReport:
    N: int
    results: dict[str, bool]

    @property
    def passed(self) -> bool:
        return all(self.results.values())


def _k1_k5_samples(count: int) -> tuple[list[BitPoly], list[BitPoly]]:
    G2 = G * G
    F2G = F * F * G
    k1, k5 = [], []
    power = BitPoly(1)
    for _ in range(count):
        k1 += [power * F, power * G, power * (F + G)]
        k5 += [power * F2G, power * G, power * (F2G + G)]
        power = power * G2
    return k1, k5


def stabilization_checks(primes=(5, 7, 11, 13), out_precision: int = 4096, samples: int = 6) -> StabilizationReport:
    """K1 / K5 annihilation patterns of T_p at output precision ``out_precision``.

    p = 1 mod 6 keeps K1 (killed by p_{3,2}) and K5 (killed by p_{3,1});
    p = 5 mod 6 swaps them.  Also checks T_5(D^5) = D.
    """
    N = max(primes) * out_precision
    k1, k5 = _k1_k5_samples(samples)
    results = {}
    s1 = [series_of_r_poly(f, N) for f in k1]
    s5 = [series_of_r_poly(f, N) for f in k5]
    results["K1 samples killed by p32"] = all(p3i(s, 2).is_zero() and u2(s).is_zero() for s in s1)
    results["K5 samples killed by p31"] = all(p3i(s, 1).is_zero() and u2(s).is_zero() for s in s5)
    for p in primes:
        same = p % 6 == 1
        img1 = [tp(s, p) for s in s1]
        img5 = [tp(s, p) for s in s5]
        if same:
            results[f"T{p} K1->K1"] = all(p3i(t, 2).is_zero() for t in img1)
            results[f"T{p} K5->K5"] = all(p3i(t, 1).is_zero() for t in img5)
        else:
            results[f"T{p} K1->K5"] = all(p3i(t, 1).is_zero() for t in img1)
            results[f"T{p} K5->K1"] = all(p3i(t, 2).is_zero() for t in img5)
    D = series_const("D", 5 * out_precision)
    results["T5 D^5 = D"] = bool(tp(D ** 5, 5).agrees(series_const("D", out_precision)))
    return StabilizationReport(N, results)
