"""Dense linear algebra over GF(2).

Rows are Python integers; bit j of a row is the entry in column j.  A
:class:`BitMatrix` is a list of such rows plus a column count.

Two elimination styles are provided:

* :func:`echelonize` -- classical reduced row-echelon form with the
  leftmost (lowest index) pivot first, plus the transform recording how
  each echelon row was built.
* :class:`IncrementalEchelon` -- rows fed one at a time and pivoted on
  their *highest* set bit, which for polynomial rows is the degree.  This
  is the structure used for streaming dependency queries.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

from .gf2poly import BitPoly, iter_bits

__all__ = [
    "BitMatrix",
    "DimensionError",
    "echelonize",
    "rank",
    "kernel_basis",
    "solve",
    "IncrementalEchelon",
]


class DimensionError(ValueError):
    """A vector or matrix has the wrong number of columns."""


def _as_int(row) -> int:
    return row.bits if isinstance(row, BitPoly) else int(row)


@dataclass
class BitMatrix:
    rows: list[int]
    ncols: int

    def __post_init__(self):
        self.rows = [_as_int(r) for r in self.rows]
        for r in self.rows:
            if r < 0 or r.bit_length() > self.ncols:
                raise DimensionError(f"row {r:#x} does not fit in {self.ncols} columns")

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls([1 << i for i in range(n)], n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> BitMatrix:
        return cls([0] * nrows, ncols)

    @classmethod
    def from_rows(cls, rows: Iterable, ncols: int | None = None) -> BitMatrix:
        rows = [_as_int(r) for r in rows]
        if ncols is None:
            ncols = max((r.bit_length() for r in rows), default=0)
        return cls(rows, ncols)

    @classmethod
    def from_columns(cls, columns: Sequence, nrows: int) -> BitMatrix:
        """Build the matrix whose column j is the bit vector ``columns[j]``."""
        rows = [0] * nrows
        for j, col in enumerate(columns):
            for i in iter_bits(_as_int(col)):
                if i >= nrows:
                    raise DimensionError(f"column {j} has an entry in row {i} >= {nrows}")
                rows[i] |= 1 << j
        return cls(rows, len(columns))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def copy(self) -> BitMatrix:
        return BitMatrix(list(self.rows), self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return (self.rows[i] >> j) & 1

    def apply(self, v) -> int:
        """The product M v, with v a column vector given as a bit row."""
        v = _as_int(v)
        if v.bit_length() > self.ncols:
            raise DimensionError("vector longer than the column count")
        out = 0
        for i, r in enumerate(self.rows):
            if (r & v).bit_count() & 1:
                out |= 1 << i
        return out

    def combine(self, x) -> int:
        """The row combination x^T M, with x selecting rows."""
        acc = 0
        for i in iter_bits(_as_int(x)):
            acc ^= self.rows[i]
        return acc

    def transpose(self) -> BitMatrix:
        return BitMatrix.from_columns(self.rows, self.ncols)

    def __matmul__(self, other: BitMatrix) -> BitMatrix:
        if self.ncols != other.nrows:
            raise DimensionError("inner dimensions differ")
        return BitMatrix([other.combine(r) for r in self.rows], other.ncols)

    def __eq__(self, other):
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.ncols == other.ncols and self.rows == other.rows

    def is_zero(self) -> bool:
        return not any(self.rows)

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]


def echelonize(M: BitMatrix) -> tuple[BitMatrix, int, BitMatrix]:
    """Reduced row-echelon form of ``M``.

    Returns ``(E, rank, T)`` with ``E == T @ M`` and ``T`` invertible.
    Pivot columns increase down the rows; zero rows sit at the bottom.
    """
    rows = list(M.rows)
    n = len(rows)
    trans = [1 << i for i in range(n)]
    r = 0
    for col in range(M.ncols):
        bit = 1 << col
        piv = next((i for i in range(r, n) if rows[i] & bit), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        trans[r], trans[piv] = trans[piv], trans[r]
        for i in range(n):
            if i != r and rows[i] & bit:
                rows[i] ^= rows[r]
                trans[i] ^= trans[r]
        r += 1
        if r == n:
            break
    return BitMatrix(rows, M.ncols), r, BitMatrix(trans, n)


def rank(M: BitMatrix) -> int:
    return echelonize(M)[1]


def _pivots(E: BitMatrix, rank_: int) -> list[int]:
    return [(row & -row).bit_length() - 1 for row in E.rows[:rank_]]


def kernel_basis(M: BitMatrix) -> list[int]:
    """Basis of {v : M v = 0}, one vector per free column, in column order."""
    E, rk, _ = echelonize(M)
    pivots = _pivots(E, rk)
    pivot_set = set(pivots)
    basis = []
    for f in range(M.ncols):
        if f in pivot_set:
            continue
        v = 1 << f
        for i, p in enumerate(pivots):
            if (E.rows[i] >> f) & 1:
                v |= 1 << p
        basis.append(v)
    return basis


def solve(M: BitMatrix, v) -> int | None:
    """Find x with ``M.combine(x) == v`` (a combination of rows).

    Returns ``None`` when ``v`` is not in the row space.  Raises
    :class:`DimensionError` if ``v`` does not fit in ``M.ncols`` columns.
    Free choices are resolved by leaving dependent rows out.
    """
    v = _as_int(v)
    if v < 0 or v.bit_length() > M.ncols:
        raise DimensionError(f"vector does not fit in {M.ncols} columns")
    E, rk, T = echelonize(M)
    x = 0
    for i, p in enumerate(_pivots(E, rk)):
        if (v >> p) & 1:
            v ^= E.rows[i]
            x ^= T.rows[i]
    return x if v == 0 else None


@dataclass
class IncrementalEchelon:
    """Echelon structure over rows pivoted on their highest set bit.

    Every accepted row is stored as given (only reduced when its leading
    bit collides with an existing pivot), together with the set of
    inserted rows it was built from.  Queries report which inserted rows
    combine to a given vector.
    """

    _pivots: dict[int, tuple[int, int]] = field(default_factory=dict)
    labels: list[Hashable] = field(default_factory=list)

    def __len__(self):
        return len(self._pivots)

    def reduce(self, row) -> tuple[int, int]:
        """Top-reduce ``row``; return ``(residual, mask)``.

        ``mask`` selects inserted rows (by insertion index) whose sum is
        ``row + residual``.  The residual is zero iff the row lies in the
        span.
        """
        row = _as_int(row)
        mask = 0
        pivots = self._pivots
        while row:
            entry = pivots.get(row.bit_length() - 1)
            if entry is None:
                break
            row ^= entry[0]
            mask ^= entry[1]
        return row, mask

    def insert(self, row, label: Hashable = None) -> list[Hashable] | None:
        """Add ``row``.  Returns ``None`` if it was independent, otherwise
        the labels of earlier rows summing to it (the row is not stored)."""
        index = len(self.labels)
        residual, mask = self.reduce(row)
        if residual == 0:
            return self.labels_of(mask)
        self.labels.append(index if label is None else label)
        self._pivots[residual.bit_length() - 1] = (residual, mask ^ (1 << index))
        return None

    def express(self, row) -> list[Hashable] | None:
        """Labels of inserted rows summing to ``row``, or ``None``."""
        residual, mask = self.reduce(row)
        return self.labels_of(mask) if residual == 0 else None

    def labels_of(self, mask: int) -> list[Hashable]:
        return [self.labels[i] for i in iter_bits(mask)]

    def pivot_positions(self) -> list[int]:
        return sorted(self._pivots)
