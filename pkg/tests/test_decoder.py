import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from agc.agcode import add_indices, encode, make_params
from agc.decoder import (
    Status,
    _table,
    estimate_error_at,
    majority_decode,
    operation_count,
    plurality,
    syndrome_votes,
)
from agc.gf import field_of_order
from agc.paritygen import build_orthogonal_set, transport_to


@pytest.fixture(scope="module")
def set312():
    return build_orthogonal_set(make_params(field_of_order(3), 1, 2))


@pytest.fixture(scope="module")
def set322():
    return build_orthogonal_set(make_params(field_of_order(3), 2, 2))


def naive_estimate(received, set0, P):
    """Plurality over explicitly transported checks, with the tie rule spelled out."""
    params = set0.params
    spec = params.spec
    votes = [c.syndrome(spec, received) for c in transport_to(set0, P)]
    counts = {v: votes.count(v) for v in set(votes)}
    best = max(counts.values())
    return min(v for v, c in counts.items() if c == best)


def error_patterns(n, q, max_weight):
    for w in range(1, max_weight + 1):
        for pos in itertools.combinations(range(n), w):
            for vals in itertools.product(range(1, q), repeat=w):
                e = np.zeros(n, dtype=np.int64)
                e[list(pos)] = vals
                yield e


def test_plurality_examples():
    assert plurality([1, 1, 0, 2], 3) == 1
    assert plurality([0, 0, 1, 1], 3) == 0
    assert plurality([2, 2, 1, 1], 3) == 1
    assert plurality([4], 5) == 4


def test_codeword_decodes_to_itself(set322):
    params = set322.params
    c = encode(params, [1, 2, 0, 1, 1, 2])
    res = majority_decode(c, set322)
    assert res.status is Status.CORRECTED
    assert not res.error_vector.any()
    assert np.array_equal(res.estimate, c)
    assert res.error_positions() == []


def test_single_error_all_syndromes_agree(set312):
    params = set312.params
    r = np.ones(params.n, dtype=np.int64)
    r[0] = 0  # 1 + 2
    assert estimate_error_at(r, set312, 0) == 2
    votes = syndrome_votes(r, set312)
    assert votes[0].tolist() == [0, 0, set312.J]
    res = majority_decode(r, set312, log_votes=True)
    assert res.corrected
    assert res.error_positions() == [(0, 2)]
    assert np.all(res.estimate == 1)
    assert res.votes_log is not None and res.votes_log.shape == (params.n, 3)


def test_exhaustive_radius_312(set312):
    params = set312.params
    rng = np.random.default_rng(3)
    patterns = list(error_patterns(params.n, 3, set312.J // 2))
    assert len(patterns) == 162
    for _ in range(5):
        c = encode(params, rng.integers(0, 3, size=params.k))
        for e in patterns:
            res = majority_decode(params.spec.add(c, e), set312)
            assert res.corrected
            assert np.array_equal(res.estimate, c)
            assert np.array_equal(res.error_vector, e)


def test_vectorized_matches_naive(set312):
    params = set312.params
    rng = np.random.default_rng(9)
    for _ in range(20):
        r = rng.integers(0, 3, size=params.n)
        votes = syndrome_votes(r, set312)
        assert votes.sum(axis=1).tolist() == [set312.J] * params.n
        for P in range(params.n):
            assert estimate_error_at(r, set312, P) == naive_estimate(r, set312, P)


def test_ties_resolved_toward_smallest_value(set312):
    params = set312.params
    rng = np.random.default_rng(4)
    with_zero = without_zero = 0
    for _ in range(400):
        r = rng.integers(0, 3, size=params.n)
        votes = syndrome_votes(r, set312)[0]
        tied = np.flatnonzero(votes == votes.max())
        if len(tied) < 2:
            continue
        assert estimate_error_at(r, set312, 0) == tied[0] == naive_estimate(r, set312, 0)
        if tied[0] == 0:
            with_zero += 1
        else:
            without_zero += 1
    assert with_zero and without_zero


def test_uncorrectable_reports_not_a_codeword(set312):
    params = set312.params
    rng = np.random.default_rng(0)
    seen = set()
    for _ in range(200):
        r = rng.integers(0, 3, size=params.n)
        res = majority_decode(r, set312)
        seen.add(res.status)
        if res.status is Status.NOT_A_CODEWORD:
            assert res.estimate.shape == (params.n,)
    assert Status.NOT_A_CODEWORD in seen


@settings(max_examples=40, deadline=None)
@given(
    msg=st.lists(st.integers(0, 2), min_size=6, max_size=6),
    shift=st.integers(0, 80),
    data=st.data(),
)
def test_translation_equivariance(set322, msg, shift, data):
    params = set322.params
    n = params.n
    e = np.zeros(n, dtype=np.int64)
    pos = data.draw(st.lists(st.integers(0, n - 1), min_size=1, max_size=20, unique=True))
    e[pos] = data.draw(st.lists(st.integers(1, 2), min_size=len(pos), max_size=len(pos)))
    r = params.spec.add(encode(params, msg), e)
    perm = add_indices(params, np.arange(n), shift)
    r_shift = np.zeros_like(r)
    r_shift[perm] = r
    a = majority_decode(r, set322).error_vector
    b = majority_decode(r_shift, set322).error_vector
    assert np.array_equal(b[perm], a)


@settings(max_examples=40, deadline=None)
@given(msg=st.lists(st.integers(0, 2), min_size=6, max_size=6), seed=st.integers(0, 2**32))
def test_random_errors_within_radius_322(set322, msg, seed):
    params = set322.params
    rng = np.random.default_rng(seed)
    t = set322.J // 2
    e = np.zeros(params.n, dtype=np.int64)
    e[rng.choice(params.n, size=t, replace=False)] = rng.integers(1, 3, size=t)
    c = encode(params, msg)
    res = majority_decode(params.spec.add(c, e), set322)
    assert res.corrected and np.array_equal(res.estimate, c)


def test_anchor_independent(set322):
    params = set322.params
    r = np.random.default_rng(2).integers(0, 3, size=params.n)
    a = majority_decode(r, set322).error_vector
    b = majority_decode(r, transport_to(set322, 40)).error_vector
    assert np.array_equal(a, b)


def test_operation_count(set322):
    assert operation_count(set322) == 81 * (16 * 3 + 12 * 5)
    assert _table(set322).translated().shape == (81, 28, 5)
