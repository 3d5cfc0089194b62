"""Brute-force oracles and the Monte-Carlo decoding harness.

Every closed form used elsewhere (minimum distance, dual distance, check
count, per-rank matrix counts) has an exhaustive counterpart here.  The
oracles only rely on encoding and rank computation, never on the check
construction they are meant to validate.
"""

from __future__ import annotations

import csv
import io
import os
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from agc.agcode import (
    CodeParams,
    encode,
    encode_many,
    generator_matrix,
    index_digits,
    make_params,
    min_distance_formula,
)
from agc.decoder import majority_decode
from agc.errors import TooLarge
from agc.falinalg import batch_rank, enumerate_subspaces, normalized_ordered_bases
from agc.gf import field_of_order, prime_power
from agc.paritygen import (
    OrthogonalCheckSet,
    SparseParityCheck,
    build_orthogonal_set,
    check_count_terms,
    check_count_value,
    gqr_tuples,
    local_check,
    mset,
)
from agc.rng import XorShift64Star

BRUTE_LIMIT = 10**6
CENSUS_LIMIT = 10**7
_CHUNK = 1 << 14


def brute_min_distance(params: CodeParams, limit: int = BRUTE_LIMIT) -> int:
    """Minimum Hamming weight over all nonzero messages."""
    q, k = params.q, params.k
    total = q**k
    if total > limit:
        raise TooLarge(f"q^k = {total} messages exceed the limit {limit}")
    best = params.n
    weights = q ** np.arange(k, dtype=np.int64)
    for start in range(1, total, _CHUNK):
        ids = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        msgs = (ids[:, None] // weights) % q
        words = encode_many(params, msgs)
        best = min(best, int(np.count_nonzero(words, axis=1).min()))
    return best


@dataclass
class DualDistanceReport:
    no_zero_column: bool
    no_parallel_columns: bool
    witness: SparseParityCheck | None
    d_dual: int


def _normalized_columns(params: CodeParams, G: np.ndarray) -> np.ndarray:
    spec = params.spec
    lead_pos = np.argmax(G != 0, axis=0)
    lead = G[lead_pos, np.arange(G.shape[1])]
    safe = np.where(lead == 0, 1, lead)
    return np.asarray(spec.mul(G, spec.inv(safe)[None, :]), dtype=np.int64)


def dual_distance_check(params: CodeParams) -> DualDistanceReport:
    """Lower bound from a column scan of G, upper bound from an explicit weight-3 check."""
    G = generator_matrix(params).a
    no_zero = bool(np.all(G.any(axis=0)))
    cols = _normalized_columns(params, G)
    distinct = len({c.tobytes() for c in np.ascontiguousarray(cols.T)})
    no_parallel = distinct == params.n
    spec = params.spec
    V = enumerate_subspaces(spec, params.l, 1)[0]
    W = enumerate_subspaces(spec, params.lp, 1)[0]
    Bp = normalized_ordered_bases(W)[0]
    witness = local_check(params, mset(V, Bp, gqr_tuples(spec, 1)[0]))
    dual_ok = not spec.matmul(G, witness.to_dense(params.n)[:, None]).any()
    if not no_zero:
        d = 1
    elif not no_parallel:
        d = 2
    elif dual_ok and witness.weight == 3:
        d = 3
    else:
        raise AssertionError("no weight-3 dual codeword exhibited")
    return DualDistanceReport(no_zero, no_parallel, witness if dual_ok else None, d)


def rank_census(params: CodeParams, limit: int = CENSUS_LIMIT) -> dict[int, int]:
    """Number of l x l' matrices of each rank, by exhaustive elimination."""
    if params.n > limit:
        raise TooLarge(f"q^delta = {params.n} matrices exceed the limit {limit}")
    counts: Counter[int] = Counter()
    for start in range(0, params.n, _CHUNK):
        ids = np.arange(start, min(params.n, start + _CHUNK), dtype=np.int64)
        pts = index_digits(params, ids).reshape(-1, params.l, params.lp)
        counts.update(batch_rank(params.spec, pts).tolist())
    return dict(sorted(counts.items()))


def coverage(check_set: OrthogonalCheckSet) -> Counter[int]:
    """Multiplicity of each non-anchor point across all check supports."""
    cnt: Counter[int] = Counter()
    for c in check_set.checks:
        cnt.update(c.support - {check_set.anchor})
    return cnt


@dataclass(frozen=True)
class RatioRow:
    q: int
    J: int
    d: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.J, self.d)


def ratio_table(l: int, lp: int, qs) -> list[RatioRow]:
    """Closed-form J and d per q; |J/d - 2^-l| must shrink as q grows."""
    rows = []
    for q in sorted(qs):
        prime_power(q)
        if q < 3:
            raise ValueError("q must be >= 3")
        rows.append(RatioRow(q, check_count_value(q, l, lp), min_distance_formula(q, l, lp)))
    target = Fraction(1, 2**l)
    gaps = [abs(r.ratio - target) for r in rows]
    if any(b >= a for a, b in zip(gaps, gaps[1:])):
        raise AssertionError(f"|J/d - 2^-{l}| not strictly decreasing: {[float(g) for g in gaps]}")
    return rows


# -- simulation ----------------------------------------------------------------


@dataclass
class SimConfig:
    params: CodeParams
    t: int
    trials: int
    seed: int = 0
    output: str | os.PathLike | None = None

    def __post_init__(self):
        if self.t < 0 or self.t > self.params.n:
            raise ValueError(f"error weight {self.t} outside 0..{self.params.n}")
        if self.trials < 1:
            raise ValueError("need at least one trial")


@dataclass(frozen=True)
class SimRecord:
    trial: int
    weight: int
    success: bool
    mismatched: int


CSV_COLUMNS = ("trial", "weight", "success", "mismatched")


def _trial(params: CodeParams, check_set: OrthogonalCheckSet, t: int, seed: int, trial: int) -> SimRecord:
    rng = XorShift64Star(seed + trial)
    q = params.q
    msg = [rng.below(q) for _ in range(params.k)]
    sent = encode(params, msg)
    err = np.zeros(params.n, dtype=np.int64)
    for pos in rng.sample(params.n, t):
        err[pos] = 1 + rng.below(q - 1)
    received = np.asarray(params.spec.add(sent, err), dtype=np.int64)
    res = majority_decode(received, check_set)
    mismatched = int(np.count_nonzero(res.estimate != sent))
    return SimRecord(trial, int(np.count_nonzero(err)), mismatched == 0, mismatched)


def simulate(cfg: SimConfig, check_set: OrthogonalCheckSet | None = None) -> list[SimRecord]:
    """Decode ``cfg.trials`` random codewords hit by exactly ``cfg.t`` random errors."""
    check_set = check_set or build_orthogonal_set(cfg.params)
    records = [_trial(cfg.params, check_set, cfg.t, cfg.seed, i) for i in range(cfg.trials)]
    if cfg.output is not None:
        with open(cfg.output, "w", encoding="ascii", newline="") as fh:
            fh.write(records_to_csv(records))
    return records


def records_to_csv(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow([r.trial, r.weight, int(r.success), r.mismatched])
    return buf.getvalue()


def success_rate(records) -> float:
    return sum(r.success for r in records) / len(records)


# -- oracle suite ----------------------------------------------------------------


@dataclass
class SuiteResult:
    name: str
    ok: bool
    detail: str = ""


DESK_PARAMS = [(3, 1, 1), (3, 1, 2), (3, 2, 2), (4, 1, 2), (5, 1, 2)]


def _expect(cond: bool, msg: str) -> None:
    if not cond:
        raise AssertionError(msg)


def _suite(name, fn) -> SuiteResult:
    try:
        return SuiteResult(name, True, fn() or "")
    except AssertionError as exc:
        return SuiteResult(name, False, str(exc))


def _distance_suite(params: CodeParams) -> str:
    got = brute_min_distance(params)
    _expect(got == params.d, f"brute d={got}, formula d={params.d}")
    return f"d={got}"


def _dual_suite(params: CodeParams) -> str:
    rep = dual_distance_check(params)
    _expect(rep.d_dual == params.d_dual, f"dual distance {rep.d_dual}")
    return f"d_dual={rep.d_dual}"


def _checks_suite(params: CodeParams) -> str:
    S = build_orthogonal_set(params)
    G = generator_matrix(params).a
    _expect(not params.spec.matmul(G, S.check_matrix().T).any(), "check not in dual code")
    cov = coverage(S)
    _expect(max(cov.values()) == 1, "supports overlap")
    if params.q % 2:
        census = rank_census(params)
        for r, t in enumerate(check_count_terms(params.q, params.l, params.lp), start=1):
            _expect(census.get(r, 0) == 2**r * t, f"rank {r}: census {census.get(r)} vs {2**r * t}")
        _expect(len(cov) == params.n - 1, "nonzero matrices not all covered")
    return f"J={S.J}"


def _decode_suite(params: CodeParams) -> str:
    S = build_orthogonal_set(params)
    t = S.J // 2
    recs = simulate(SimConfig(params, t, 200, seed=2024), S)
    _expect(all(r.success for r in recs), f"decoding failed at weight {t}")
    return f"200/200 at t={t}"


def _trend_suite() -> str:
    rows = ratio_table(2, 2, [3, 5, 7, 9])
    return " ".join(f"q={r.q}:{float(r.ratio):.3f}" for r in rows)


def verify(param_sets=DESK_PARAMS) -> list[SuiteResult]:
    """Compare every closed form against its exhaustive oracle and decode at the radius."""
    results = []
    for q, l, lp in param_sets:
        params = make_params(field_of_order(q), l, lp)
        tag = f"(q={q},l={l},l'={lp})"
        for name, fn in (("min distance", _distance_suite), ("dual distance", _dual_suite),
                         ("orthogonal checks", _checks_suite), ("decoding radius", _decode_suite)):
            results.append(_suite(f"{name} {tag}", lambda fn=fn: fn(params)))
    results.append(_suite("J/d trend (l=l'=2)", _trend_suite))
    return results
