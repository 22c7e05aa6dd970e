import csv
import io

import pytest

from char2hecke.gf2poly import BitPoly, from_text, to_hex
from char2hecke.recurrence import (
    CnStream,
    CombinationReport,
    a_seq,
    c_seq,
    degree_law_check,
    express_c4m,
    new_state,
    replay,
    write_csv,
)

import oracles


def test_a_seeds_and_first_step():
    a = a_seq(4)
    assert a[:4] == [from_text(s) for s in ("1", "t+1", "t^2+t", "t^3+t^2")]
    assert a[4] == from_text("t^4+t")


def test_a_plus_monomial_is_c():
    a, c = a_seq(200), c_seq(200)
    for n in range(201):
        assert a[n] + BitPoly.monomial(n) == c[n]


def test_c_first_values():
    c = c_seq(8)
    assert c[:4] == [from_text(s) for s in ("0", "1", "t", "t^2")]
    assert c[4] == from_text("t")
    assert c[5] == from_text("t^4")
    assert c[8] == from_text("t^5")


def test_c_matches_operator_oracle():
    assert [x.bits for x in c_seq(60)] == oracles.c_via_U(60)


@pytest.mark.parametrize("m, support", [(0, []), (1, [2]), (2, [3, 5, 6])])
def test_express_small(m, support):
    rep = express_c4m(m)
    assert rep.support == support
    assert rep.verified


@pytest.mark.parametrize("m", [1, 2, 3])
def test_express_against_exhaustive_search(m):
    c = [x.bits for x in c_seq(4 * m)]
    pool_idx = [k for k in range(1, 4 * m) if k % 4]
    hits = oracles.brute_combinations(c[4 * m], [c[k] for k in pool_idx])
    # the C_k in the pool have distinct degrees, so the combination is unique
    assert len(hits) == 1
    assert express_c4m(m).support == [pool_idx[i] for i in hits[0]]


def test_shared_state_matches_fresh():
    state = new_state()
    for m in (5, 3, 9):
        assert express_c4m(m, state) == express_c4m(m)


def test_replay_ci_subset():
    reports = list(replay(499))
    assert len(reports) == 500
    for rep in reports:
        assert rep.verified
        assert all(k % 4 and k < 4 * rep.m for k in rep.support)


def test_report_json_round_trip():
    rep = express_c4m(2)
    assert CombinationReport.from_json(rep.to_json()) == rep


def test_degree_law():
    assert degree_law_check(3).passed
    assert degree_law_check(8).passed
    assert degree_law_check(2000).passed


def test_degree_law_against_list():
    c = c_seq(400)
    for n, x in enumerate(c[1:], start=1):
        if n % 4:
            assert x.degree == n - 1
        else:
            assert x.degree < n - 1


def test_stream():
    s = CnStream(keep_history=True)
    assert s[8] == 0b100000
    assert [next(CnStream()) for _ in range(1)] == [0]
    with pytest.raises(LookupError):
        CnStream()[3]


def test_csv():
    text = write_csv(8)
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["n", "degree", "hex"]
    assert rows[1] == ["0", "-inf", "00"]
    assert rows[6] == ["5", "4", to_hex(from_text("t^4"))]
    assert len(rows) == 10
    buf = io.StringIO()
    write_csv(8, buf)
    assert buf.getvalue() == text
