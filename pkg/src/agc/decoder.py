"""One-step q-ary majority-logic decoding.

Every coordinate P gets the J checks anchored at zero translated to P.  Each
translated check yields a syndrome that equals the error value at P whenever
no other error lies on that check; the plurality syndrome is the estimate.
Ties go to 0, then to the smallest canonical index.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from agc.agcode import CodeParams, _as_word, add_indices, is_codeword, point_index
from agc.gf import FieldElement
from agc.paritygen import OrthogonalCheckSet, transport_to


class Status(enum.Enum):
    CORRECTED = "Corrected"
    NOT_A_CODEWORD = "NotACodeword"


@dataclass
class DecodeResult:
    estimate: np.ndarray
    error_vector: np.ndarray
    status: Status
    votes_log: np.ndarray | None = None  # (n, q) vote tallies when requested

    @property
    def corrected(self) -> bool:
        return self.status is Status.CORRECTED

    def error_positions(self) -> list[tuple[int, int]]:
        return [(int(i), int(self.error_vector[i])) for i in np.flatnonzero(self.error_vector)]


def plurality(votes, q: int) -> int:
    """Most frequent value; ties prefer 0, then the smallest index."""
    counts = np.bincount(np.asarray(votes, dtype=np.int64), minlength=q)
    # argmax returns the first maximum, and 0 is the smallest index
    return int(np.argmax(counts))


class _CheckTable:
    """Padded arrays of the zero-anchored checks: offsets (J, w) and coefficients (J, w)."""

    def __init__(self, check_set: OrthogonalCheckSet):
        if check_set.anchor != 0:
            check_set = transport_to(check_set, 0)
        w = max((c.weight for c in check_set.checks), default=0)
        J = check_set.J
        self.offsets = np.zeros((J, w), dtype=np.int64)
        self.coefs = np.zeros((J, w), dtype=np.int64)
        for j, c in enumerate(check_set.checks):
            self.offsets[j, : c.weight] = c.indices()
            self.coefs[j, : c.weight] = c.coefficients()
        self.params = check_set.params
        self._translated: np.ndarray | None = None

    def translated(self) -> np.ndarray:
        """(n, J, w) point indices of every check moved to every coordinate."""
        if self._translated is None:
            p = self.params
            self._translated = add_indices(p, self.offsets[None, :, :], np.arange(p.n)[:, None, None])
        return self._translated

    def syndromes(self, received: np.ndarray, at=None) -> np.ndarray:
        spec = self.params.spec
        if at is None:
            idx = self.translated()
        else:
            idx = add_indices(self.params, self.offsets[None, :, :], np.asarray(at, dtype=np.int64)[:, None, None])
        terms = spec.mul(self.coefs, received[idx])
        return spec.sum(terms, axis=-1)


@lru_cache(maxsize=8)
def _table(check_set: OrthogonalCheckSet) -> _CheckTable:
    return _CheckTable(check_set)


def estimate_error_at(received, set0: OrthogonalCheckSet, P) -> FieldElement:
    """Plurality of the J syndromes of the checks transported to ``P``."""
    params = set0.params
    r = _as_word(params, received)
    target = P if isinstance(P, (int, np.integer)) else point_index(params, P)
    s = _table(set0).syndromes(r, at=[int(target)])[0]
    return params.spec(plurality(s, params.q))


def syndrome_votes(received, set0: OrthogonalCheckSet) -> np.ndarray:
    """(n, q) tallies: how many of the J checks at each coordinate voted for each value."""
    params = set0.params
    r = _as_word(params, received)
    s = _table(set0).syndromes(r)
    q = params.q
    return (s[:, :, None] == np.arange(q)[None, None, :]).sum(axis=1)


def majority_decode(received, set0: OrthogonalCheckSet, log_votes: bool = False) -> DecodeResult:
    """Single-pass decode of every coordinate, then a membership test."""
    params: CodeParams = set0.params
    r = _as_word(params, received)
    votes = syndrome_votes(r, set0)
    err = np.argmax(votes, axis=1).astype(np.int64)
    est = np.asarray(params.spec.sub(r, err), dtype=np.int64)
    status = Status.CORRECTED if is_codeword(params, est) else Status.NOT_A_CODEWORD
    return DecodeResult(est, err, status, votes if log_votes else None)


def operation_count(set0: OrthogonalCheckSet) -> int:
    """Field multiplications in one full decode: n times the total check weight."""
    return set0.params.n * sum(c.weight for c in set0.checks)

