"""Batch verification routines shared by the command line and the demos.

Each check returns a :class:`CheckResult`; ``detail`` names the first
counterexample when a check fails.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import adapted, kernelspaces, qseries, recurrence, semilinear
from .gf2poly import BitPoly

__all__ = ["CheckResult", "LEVELS", "run_all"]


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name}" + (f"  ({self.detail})" if self.detail else "")


# bounds per level: quick is sized for CI, full matches the headline runs
LEVELS = {
    "quick": dict(cn_max=2000, degree_max=2000, km_max=40, sq_max=16, trials=200,
                  t_max=128, l28_k=32, series_N=2000, u3_nmax=16, u3_N=1024, grade=2,
                  stab_N=512),
    "full": dict(cn_max=10000, degree_max=10000, km_max=200, sq_max=64, trials=1000,
                 t_max=512, l28_k=128, series_N=10000, u3_nmax=64, u3_N=4096, grade=4,
                 stab_N=4096),
}


def check_cn_express(max_n: int) -> CheckResult:
    mmax = (max_n - 1) // 4
    for rep in recurrence.replay(mmax):
        bad = [k for k in rep.support if k % 4 == 0 or k >= 4 * rep.m]
        if not rep.verified or bad:
            return CheckResult("C_4m expressed", False, f"m={rep.m}")
    return CheckResult("C_4m expressed", True, f"all C_4m, 4m<{max_n}")


def check_degree_law(nmax: int) -> CheckResult:
    rep = recurrence.degree_law_check(nmax)
    detail = f"n<={nmax}" if rep.passed else f"n={rep.first_violation} degree={rep.degree}"
    return CheckResult("degree law", rep.passed, detail)


def _km_ok(m: int) -> bool:
    try:
        basis = kernelspaces.km_basis(m)
    except ArithmeticError:
        return False
    return basis.gdegrees() == list(range(0, 4 * m + 1, 4))


def _map(fn, items, jobs: int):
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def check_km(max_m: int, jobs: int = 1) -> CheckResult:
    oks = _map(_km_ok, range(max_m + 1), jobs)
    bad = [m for m, ok in enumerate(oks) if not ok]
    return CheckResult("dim K_m = m+1, g-degrees 0,4,..,4m", not bad,
                       f"m<={max_m}" if not bad else f"m={bad[0]}")


def check_squared_kernels(max_m: int, jobs: int = 1) -> CheckResult:
    oks = _map(kernelspaces.kernel_equality_check, range(max_m + 1), jobs)
    bad = [m for m, ok in enumerate(oks) if not ok]
    return CheckResult("(U+I)^2 kernels on L and L* agree", not bad,
                       f"m<={max_m}" if not bad else f"m={bad[0]}")


def check_operator_laws(trials: int, t_max: int, l28_k: int, seed: int = 0) -> CheckResult:
    rng = random.Random(seed)
    F, G = semilinear.F, semilinear.G
    for _ in range(trials):
        f = BitPoly(rng.getrandbits(513))
        uf = semilinear.u_apply(f)
        if semilinear.u_apply(f * f) != uf * uf:
            return CheckResult("operator laws", False, f"U(f^2) for f={f}")
        if semilinear.u_apply(G * f) != F * uf:
            return CheckResult("operator laws", False, f"U(Gf) for f={f}")
    for n in range(t_max + 1):
        p = semilinear.f_coordinates(semilinear.t_apply(BitPoly.monomial(n)))
        if p is None or any(k > n - 2 or (n - k) % 2 for k in p.exponents()):
            return CheckResult("operator laws", False, f"T(F^{n})")
    for i in range(3):
        for k in range(l28_k + 1):
            lhs_arg = (F ** i) * (G ** k)
            lhs = semilinear.u_apply(semilinear.u_apply(lhs_arg)) + lhs_arg
            if lhs != (F ** i) * semilinear.t_apply(BitPoly.monomial(k)):
                return CheckResult("operator laws", False, f"(U^2+I)(F^{i}G^{k})")
    return CheckResult("operator laws", True, f"{trials} trials, T up to F^{t_max}, k<={l28_k}")


def check_series_cross(N: int) -> CheckResult:
    F, G = semilinear.F, semilinear.G
    pairs = {
        "F": (qseries.series_of_r_poly(F, N), qseries.series_const("F", N)),
        "G": (qseries.series_of_r_poly(G, N), qseries.series_const("G", N)),
        "D": (qseries.p3i(qseries.series_of_r_poly(F, N), 1), qseries.series_const("D", N)),
    }
    bad = [k for k, (a, b) in pairs.items() if not a.agrees(b)]
    return CheckResult("series of F, G, D match enumeration", not bad,
                       f"N={N}" if not bad else f"{bad[0]} differs")


def check_u3(nmax: int, N: int, samples: int = 100, seed: int = 0) -> CheckResult:
    if not qseries.check_u3_equals_u(nmax, N):
        return CheckResult("U_3 = U, U_2 kills M(odd)", False, "U_3 != U")
    rng = random.Random(seed)
    for _ in range(samples):
        g = rng.getrandbits(64) | 1
        odd = kernelspaces.OddElement(BitPoly(g)).to_r()
        if not qseries.u2(qseries.series_of_r_poly(odd, N)).is_zero():
            return CheckResult("U_3 = U, U_2 kills M(odd)", False, f"g={g:#x}")
    return CheckResult("U_3 = U, U_2 kills M(odd)", True, f"n<={nmax}, N={N}")


def check_adapted(grade: int) -> CheckResult:
    name = f"adapted grid grade {grade}"
    try:
        grid = adapted.build_adapted(grade)
        grid.verify_exact()
        for p in (5, 11):
            u = adapted.tp_as_xy_series(p, grade, grid)
            if (0, 0) in u:
                return CheckResult(name, False, f"T_{p} has a constant term")
        if not adapted.pr1_equivariance(grid):
            return CheckResult(name, False, "pr1 not equivariant")
    except (ArithmeticError, AssertionError) as exc:
        return CheckResult(name, False, str(exc))
    return CheckResult(name, True, f"inside K_{grid.model.m}")


def check_stabilization(out_precision: int) -> CheckResult:
    rep = adapted.stabilization_checks((5, 7, 11, 13), out_precision)
    bad = [k for k, v in rep.results.items() if not v]
    return CheckResult("K1/K5 stabilization", not bad,
                       f"precision {out_precision}" if not bad else bad[0])


def run_all(level: str = "quick", jobs: int = 1) -> list[CheckResult]:
    b = LEVELS[level]
    return [
        check_cn_express(b["cn_max"]),
        check_degree_law(b["degree_max"]),
        check_km(b["km_max"], jobs),
        check_squared_kernels(b["sq_max"], jobs),
        check_operator_laws(b["trials"], b["t_max"], b["l28_k"]),
        check_series_cross(b["series_N"]),
        check_u3(b["u3_nmax"], b["u3_N"]),
        check_adapted(b["grade"]),
        check_stabilization(b["stab_N"]),
    ]
