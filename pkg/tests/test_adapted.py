import json

import pytest

from char2hecke.adapted import (
    InsufficientModel,
    adapted_grid,
    build_adapted,
    build_k_model,
    default_precision,
    is_nilpotent,
    pr1_equivariance,
    series_json,
    stabilization_checks,
    tp_as_xy_series,
)
from char2hecke.gf2linalg import BitMatrix
from char2hecke.gf2poly import BitPoly, from_text
from char2hecke.kernelspaces import OddElement, km_basis
from char2hecke.qseries import series_of_r_poly, u2, u3

import oracles


@pytest.fixture(scope="module")
def model12():
    return build_k_model(12)


@pytest.fixture(scope="module")
def grid2(model12):
    return adapted_grid(2, model12)


@pytest.fixture(scope="module")
def grid4():
    return build_adapted(4)


def _series_list(g, N):
    return [series_of_r_poly(OddElement(g).to_r(), N)[n] for n in range(N)]


def test_model_m0():
    model = build_k_model(0)
    assert model.dim == 1
    assert model.element(1).to_r() == from_text("t^2+t")
    assert model.X_matrix == BitMatrix([0], 1)
    assert model.Y_matrix == BitMatrix([0], 1)


def test_model_annihilation(model12):
    assert model12.annihilation_ok()
    for x in range(model12.dim):
        s = model12.series(1 << x)
        assert u2(s).is_zero()
        assert (u3(s) + s.truncate(s.precision // 3)).is_zero()


def test_default_precision_allows_pull_back():
    for m in (0, 4, 20):
        assert default_precision(m) // 13 > 8 * m + 2


def test_hecke_matrices_match_series_oracle():
    # T_p on the series of each basis element, computed coefficientwise,
    # must be the series of the column the model reports
    model = build_k_model(4)
    N = model.N
    for p in (7, 13):
        H = model.hecke(p)
        for x in range(model.dim):
            img = oracles.tp_list(_series_list(model.element(1 << x).g, N), p)
            col = H.apply(1 << x)
            want = _series_list(model.element(col).g, len(img))
            assert img == want


def test_x_y_commute_and_nilpotent(model12):
    X, Y = model12.X_matrix, model12.Y_matrix
    assert X @ Y == Y @ X
    assert is_nilpotent(X) and is_nilpotent(Y)
    assert is_nilpotent(build_k_model(2).X_matrix)


def _brute_grade1():
    # enumerate K_3, apply T_7 / T_13 on coefficient lists, keep the
    # solutions with zero constant term in g
    basis = km_basis(3)
    N = 13 * 60
    FG = _series_list(BitPoly(1), N)
    zero = [0] * (N // 7)
    found = {"m10": [], "m01": []}
    for x in range(1 << basis.dim):
        g = basis.combine(x).g
        s = _series_list(g, N)
        t7, t13 = oracles.tp_list(s, 7), oracles.tp_list(s, 13)
        if g.bits & 1:
            continue
        if t7 == FG[: len(t7)] and not any(t13):
            found["m10"].append(g)
        if not any(t7) and t13 == FG[: len(t13)]:
            found["m01"].append(g)
    return found


def test_grade1_against_brute_force():
    found = _brute_grade1()
    assert found["m10"] == [from_text("t^4+t^2")]
    assert found["m01"] == [from_text("t^8+t^6+t^5+t^4+t^3+t^2")]
    grid = adapted_grid(1, build_k_model(3))
    assert grid.element(1, 0).g == found["m10"][0]
    assert grid.element(0, 1).g == found["m01"][0]


def test_grade0():
    grid = adapted_grid(0, build_k_model(0))
    assert grid.keys() == [(0, 0)]
    assert grid.element(0, 0).to_r() == from_text("t^2+t")


def test_grid_independent_of_model(grid2):
    small = adapted_grid(1, build_k_model(3))
    for key in small.keys():
        assert small.element(*key) == grid2.element(*key)


def test_grade2_values(grid2):
    assert grid2.element(0, 2).g == from_text("t^32+t^24+t^17+t^16+t^9+t^8")
    assert grid2.element(1, 1).g == from_text("t^12+t^9+t^8+t^5")
    assert grid2.element(2, 0).g == from_text("t^16+t^12+t^9+t^5")


def test_grade2_relations_exact(grid2):
    lines = grid2.verify_exact()
    assert len(lines) == 12
    assert all(line.endswith("ok") for line in lines)


def test_insufficient_model():
    with pytest.raises(InsufficientModel):
        adapted_grid(4, build_k_model(20))


def test_grade4(grid4):
    assert grid4.element(0, 0).g == BitPoly(1)
    assert len(grid4.keys()) == 15
    assert len(grid4.verify_exact()) == 30
    degrees = {k: grid4.element(*k).g_degree for k in grid4.keys()}
    assert degrees[1, 0] == 4 and degrees[0, 1] == 8 and degrees[0, 4] == 128


@pytest.mark.parametrize("p, support", [
    (7, {(1, 0)}),
    (13, {(0, 1)}),
    (5, {(0, 1), (0, 3), (1, 0), (1, 2), (3, 0)}),
    (11, {(1, 1), (1, 3), (2, 0), (2, 2), (3, 1)}),
])
def test_tp_series(grid4, p, support):
    u = tp_as_xy_series(p, 4, grid4)
    assert set(u) == support
    assert (0, 0) not in u


def test_tp_series_input_checks(grid2):
    with pytest.raises(ValueError):
        tp_as_xy_series(9, 2, grid2)
    with pytest.raises(ValueError):
        tp_as_xy_series(5, 3, grid2)


def test_series_json():
    data = json.loads(series_json(5, 4, {(1, 0): 1, (0, 1): 1}))
    assert data == {"p": 5, "d": 4, "coeffs": [[0, 1], [1, 0]]}


def test_manifest(grid2):
    data = json.loads(grid2.manifest_json())
    assert data["d"] == 2 and data["m"] == 12
    assert [(e["i"], e["j"]) for e in data["entries"]] == grid2.keys()
    assert data["entries"][0]["g_hex"] == "01"


def test_pr1_equivariance(grid2):
    assert pr1_equivariance(grid2)


def test_stabilization_small():
    rep = stabilization_checks(out_precision=600)
    assert rep.passed, rep.results
    assert "T5 D^5 = D" in rep.results
    assert rep.N == 13 * 600
