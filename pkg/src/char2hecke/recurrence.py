"""The sequences A_n and C_n = A_n + t^n in Z/2[t].

    A_{n+4} = A_{n+3} + (t^4+t^3+t^2+t) A_n,           A_0..A_3 = 1, t+1, t^2+t, t^3+t^2
    C_{n+4} = C_{n+3} + (t^4+t^3+t^2+t) C_n + t^n (t^2+t),  C_0..C_3 = 0, 1, t, t^2

C_n has degree n-1 unless 4 divides n, in which case the degree drops.
The C_k with k not divisible by 4 therefore have pairwise distinct degrees
and are independent; every C_{4m} turns out to be a sum of them.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from typing import Iterator

from .gf2linalg import IncrementalEchelon
from .gf2poly import BitPoly, to_hex

__all__ = [
    "a_seq",
    "c_seq",
    "CnStream",
    "CombinationReport",
    "express_c4m",
    "replay",
    "DegreeLawReport",
    "degree_law_check",
    "write_csv",
]

_A_SEEDS = (0b1, 0b11, 0b110, 0b1100)
_C_SEEDS = (0, 0b1, 0b10, 0b100)


def _times_F(a: int) -> int:
    return (a << 4) ^ (a << 3) ^ (a << 2) ^ (a << 1)


def _a_bits(nmax: int) -> list[int]:
    out = list(_A_SEEDS[: nmax + 1])
    for n in range(nmax - 3):
        out.append(out[n + 3] ^ _times_F(out[n]))
    return out


def a_seq(nmax: int) -> list[BitPoly]:
    """``[A_0, ..., A_nmax]``."""
    if nmax < 0:
        raise ValueError("nmax must be nonnegative")
    return [BitPoly(a) for a in _a_bits(nmax)]


def c_seq(nmax: int) -> list[BitPoly]:
    """``[C_0, ..., C_nmax]``."""
    if nmax < 0:
        raise ValueError("nmax must be nonnegative")
    stream = CnStream()
    return [BitPoly(next(stream)) for _ in range(nmax + 1)]


class CnStream:
    """Iterator over the raw bit patterns of C_0, C_1, ...

    Keeps a window of the last four values.  With ``keep_history`` every
    value is retained and can be looked up by index.
    """

    def __init__(self, keep_history: bool = False):
        self.index = 0
        self.window: list[int] = []
        self.history: list[int] | None = [] if keep_history else None

    def __iter__(self) -> Iterator[int]:
        return self

    def __next__(self) -> int:
        n = self.index
        if n < 4:
            value = _C_SEEDS[n]
        else:
            w = self.window
            k = n - 4
            value = w[3] ^ _times_F(w[0]) ^ (0b110 << k)
        self.window = (self.window + [value])[-4:]
        if self.history is not None:
            self.history.append(value)
        self.index += 1
        return value

    def __getitem__(self, n: int) -> int:
        if self.history is None:
            raise LookupError("stream was created without history")
        while len(self.history) <= n:
            next(self)
        return self.history[n]


@dataclass
class CombinationReport:
    """C_{4m} as a sum of the C_k, k < 4m, k not divisible by 4."""

    m: int
    support: list[int] = field(default_factory=list)
    verified: bool = False

    def to_json(self) -> str:
        return json.dumps(asdict(self), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> CombinationReport:
        data = json.loads(text)
        return cls(m=int(data["m"]), support=[int(k) for k in data["support"]], verified=bool(data["verified"]))


class _Replayer:
    """Streams C_n, feeding the non-multiples of 4 into a top-bit echelon.

    Those C_k have distinct degrees k-1, so they are stored unreduced and
    the echelon query for C_{4m} walks down the degrees directly.
    """

    def __init__(self):
        self.stream = CnStream(keep_history=True)
        self.echelon = IncrementalEchelon()

    def advance_to(self, n: int):
        while self.stream.index <= n:
            k = self.stream.index
            c = next(self.stream)
            if k % 4:
                dep = self.echelon.insert(c, label=k)
                if dep is not None:
                    raise ArithmeticError(f"C_{k} depends on earlier C_j: {dep}")

    def express(self, m: int) -> CombinationReport:
        if m < 0:
            raise ValueError("m must be nonnegative")
        self.advance_to(4 * m)
        target = self.stream[4 * m]
        support = self.echelon.express(target)
        if support is None:
            raise ArithmeticError(f"C_{4 * m} is not a combination of earlier C_k")
        support = sorted(support)
        check = 0
        for k in support:
            check ^= self.stream[k]
        return CombinationReport(m=m, support=support, verified=(check == target))


def express_c4m(m: int, state: _Replayer | None = None) -> CombinationReport:
    """Express C_{4m} through C_k with k < 4m, k not divisible by 4.

    Pass the same ``state`` (from :func:`replay` or a previous call) to
    reuse the already generated terms.
    """
    if state is None:
        state = _Replayer()
    return state.express(m)


def replay(mmax: int) -> Iterator[CombinationReport]:
    """Yield the reports for m = 0, 1, ..., mmax from one shared stream."""
    state = _Replayer()
    for m in range(mmax + 1):
        yield state.express(m)


def new_state() -> _Replayer:
    return _Replayer()


@dataclass
class DegreeLawReport:
    nmax: int
    passed: bool
    first_violation: int | None = None
    degree: int | None = None


def degree_law_check(nmax: int) -> DegreeLawReport:
    """deg C_n == n-1 when 4 does not divide n, and < n-1 when it does."""
    stream = CnStream()
    for n in range(nmax + 1):
        c = next(stream)
        # the zero polynomial (C_0) counts as degree -inf
        d = c.bit_length() - 1 if c else None
        if n % 4:
            ok = d == n - 1
        else:
            ok = d is None or d < n - 1
        if not ok:
            return DegreeLawReport(nmax, False, n, d)
    return DegreeLawReport(nmax, True)


def write_csv(nmax: int, out: io.TextIOBase | None = None) -> str:
    """Rows ``n,degree,hex`` for C_0..C_nmax; the zero polynomial's degree is ``-inf``."""
    buf = out if out is not None else io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "degree", "hex"])
    stream = CnStream()
    for n in range(nmax + 1):
        c = next(stream)
        writer.writerow([n, c.bit_length() - 1 if c else "-inf", to_hex(BitPoly(c))])
    return buf.getvalue() if out is None else ""
