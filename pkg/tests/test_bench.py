import itertools
from fractions import Fraction

import numpy as np
import pytest

from agc.agcode import encode, make_params
from agc.bench import (
    CSV_COLUMNS,
    SimConfig,
    brute_min_distance,
    dual_distance_check,
    ratio_table,
    records_to_csv,
    simulate,
    success_rate,
    verify,
)
from agc.errors import TooLarge
from agc.gf import field_of_order
from agc.rng import MASK64, XorShift64Star, splitmix64


def params_of(q, l, lp):
    return make_params(field_of_order(q), l, lp)


def test_splitmix64_known_answers():
    assert splitmix64(0) == 0xE220A8397B1DCDAF
    assert splitmix64(0x9E3779B97F4A7C15) == 0x6E789E6AA1B965F4


def test_xorshift_reproducible_and_bounded():
    a, b = XorShift64Star(42), XorShift64Star(42)
    xs = [a.next_u64() for _ in range(50)]
    assert xs == [b.next_u64() for _ in range(50)]
    assert all(0 <= x <= MASK64 for x in xs)
    assert XorShift64Star(43).next_u64() != xs[0]
    g = XorShift64Star(7)
    draws = [g.below(5) for _ in range(5000)]
    assert set(draws) == set(range(5))
    counts = np.bincount(draws)
    assert counts.min() > 850


def test_sample_distinct():
    g = XorShift64Star(1)
    for t in (0, 1, 14, 81):
        s = g.sample(81, t)
        assert len(set(s)) == t and all(0 <= x < 81 for x in s)
    with pytest.raises(ValueError):
        g.sample(3, 4)
    with pytest.raises(ValueError):
        g.below(0)


@pytest.mark.parametrize("q,l,lp", [(3, 1, 1), (3, 1, 2), (4, 1, 2), (5, 1, 2)])
def test_brute_min_distance_small(q, l, lp):
    params = params_of(q, l, lp)
    assert brute_min_distance(params) == params.d


def test_brute_min_distance_independent_of_chunking():
    # plain loop over all nonzero messages for the smallest nontrivial code
    params = params_of(3, 1, 2)
    best = min(
        int(np.count_nonzero(encode(params, m)))
        for m in itertools.product(range(3), repeat=params.k)
        if any(m)
    )
    assert best == brute_min_distance(params) == 6


def test_brute_min_distance_limit():
    with pytest.raises(TooLarge):
        brute_min_distance(params_of(3, 2, 2), limit=100)


@pytest.mark.parametrize("q,l,lp", [(3, 1, 2), (3, 2, 2), (4, 1, 2), (4, 2, 2), (5, 1, 2)])
def test_dual_distance_three(q, l, lp):
    rep = dual_distance_check(params_of(q, l, lp))
    assert rep.no_zero_column and rep.no_parallel_columns
    assert rep.witness is not None and rep.witness.weight == 3
    assert rep.d_dual == 3


def test_ratio_table_values():
    rows = ratio_table(2, 2, [3, 5, 7, 9])
    assert [round(float(r.ratio), 3) for r in rows] == [0.583, 0.400, 0.345, 0.319]
    assert rows[0].ratio == Fraction(28, 48)
    gaps = [abs(r.ratio - Fraction(1, 4)) for r in rows]
    assert all(b < a for a, b in zip(gaps, gaps[1:]))


def test_ratio_table_rejects_bad_q():
    with pytest.raises(ValueError):
        ratio_table(2, 2, [6])
    with pytest.raises(ValueError):
        ratio_table(2, 2, [2, 3])


def test_simulate_csv_deterministic(tmp_path):
    params = params_of(3, 2, 2)
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    r1 = simulate(SimConfig(params, 14, 30, seed=5, output=out1))
    simulate(SimConfig(params, 14, 30, seed=5, output=out2))
    assert out1.read_bytes() == out2.read_bytes()
    assert records_to_csv(r1) == out1.read_text()
    lines = out1.read_text().splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 31
    assert all(r.weight == 14 for r in r1)
    assert success_rate(r1) == 1.0
    r3 = simulate(SimConfig(params, 14, 30, seed=6))
    assert [r.trial for r in r3] == list(range(30))


def test_simulate_beyond_radius_can_fail():
    params = params_of(3, 1, 2)
    recs = simulate(SimConfig(params, 5, 100, seed=0))
    assert success_rate(recs) < 1.0
    assert all(r.success == (r.mismatched == 0) for r in recs)


def test_sim_config_validation():
    params = params_of(3, 1, 2)
    with pytest.raises(ValueError):
        SimConfig(params, 10, 1)
    with pytest.raises(ValueError):
        SimConfig(params, 1, 0)


def test_verify_all_pass():
    results = verify()
    assert results and all(r.ok for r in results), [r for r in results if not r.ok]
