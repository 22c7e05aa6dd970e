"""Headline criteria at full scale; each test prints one PASS/FAIL line."""

import time

import pytest

from char2hecke import checks, kernelspaces


@pytest.fixture
def report(capsys):
    def emit(number, result, seconds):
        with capsys.disabled():
            print(f"\n[acceptance {number}] {result.line()}  [{seconds:.1f}s]")
        return result
    return emit


def _timed(fn, *args, **kwargs):
    start = time.perf_counter()
    result = fn(*args, **kwargs)
    return result, time.perf_counter() - start


def test_1_c4m_expressed_below_10000(report):
    res, secs = _timed(checks.check_cn_express, 10000)
    report(1, res, secs)
    assert res.passed
    assert secs <= 600


def test_1_ci_subset_below_2000(report):
    res, secs = _timed(checks.check_cn_express, 2000)
    report("1 (CI subset)", res, secs)
    assert res.passed
    assert secs <= 10


def test_2_degree_law_to_10000(report):
    res, secs = _timed(checks.check_degree_law, 10000)
    report(2, res, secs)
    assert res.passed


def test_3_kernel_dimensions_to_200(report):
    def run():
        res = checks.check_km(200, jobs=1)
        # r-degrees are 2, 10, ..., 8m+2
        top = kernelspaces.km_basis(200).rdegrees()
        if res.passed and top != list(range(2, 8 * 200 + 3, 8)):
            return checks.CheckResult(res.name, False, "r-degrees")
        return res
    res, secs = _timed(run)
    report(3, res, secs)
    assert res.passed


def test_4_squared_kernels_to_64(report):
    res, secs = _timed(checks.check_squared_kernels, 64)
    report(4, res, secs)
    assert res.passed


def test_5_operator_laws(report):
    res, secs = _timed(checks.check_operator_laws, 1000, 512, 128)
    report(5, res, secs)
    assert res.passed


def test_6_series_cross_representation(report):
    res, secs = _timed(checks.check_series_cross, 10000)
    report(6, res, secs)
    assert res.passed


def test_7_u3_and_u2(report):
    res, secs = _timed(checks.check_u3, 64, 4096, samples=100)
    report(7, res, secs)
    assert res.passed


def test_8_adapted_grid_grade_4(report):
    res, secs = _timed(checks.check_adapted, 4)
    report(8, res, secs)
    assert res.passed


def test_9_stabilization(report):
    res, secs = _timed(checks.check_stabilization, 4096)
    report(9, res, secs)
    assert res.passed
