"""The affine Grassmann code C^A(l, m).

Codewords are evaluations of linear combinations of the minors of a generic
l x l' matrix at every l x l' matrix over GF(q).  Coordinates are labelled by
matrices; a matrix ``P`` sits at coordinate

    point_index(P) = sum_j digit_j * q**j

where ``digit_j`` is the canonical index of the j-th entry of ``P`` in
row-major order, so entry (1, 1) is the least significant digit.

Words are plain 1-D ``int64`` arrays of canonical field indices of length n.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import NamedTuple

import numpy as np

from agc.errors import BadIndex, BadShape, FieldTooSmall, IndexOutOfRange, LengthMismatch, TooLarge
from agc.falinalg import MatFq, _rref_array, in_rowspace
from agc.gf import FieldElement, FieldSpec

# generator matrices with more columns than this must be streamed with generator_block
MAX_GENERATOR_COLUMNS = 1 << 21

_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


def min_distance_formula(q: int, l: int, lp: int) -> int:
    d = q ** (l * lp - l * l)
    for i in range(l):
        d *= q**l - q**i
    return d


@dataclass(frozen=True)
class CodeParams:
    spec: FieldSpec
    l: int
    lp: int
    m: int
    delta: int
    n: int
    k: int
    d: int
    d_dual: int

    @property
    def q(self) -> int:
        return self.spec.q

    def __str__(self):
        return f"C^A({self.l},{self.m}) over GF({self.q}): n={self.n} k={self.k} d={self.d} d_dual={self.d_dual}"


class MinorIndex(NamedTuple):
    """Row set ``I`` and column set ``J`` (0-based, ascending) of a minor."""

    I: tuple[int, ...]
    J: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.I)


def minor_indices(l: int, lp: int) -> list[MinorIndex]:
    """All minors ordered by size, then lexicographically on (I, J); (empty, empty) first."""
    out = []
    for t in range(min(l, lp) + 1):
        for I in itertools.combinations(range(l), t):
            for J in itertools.combinations(range(lp), t):
                out.append(MinorIndex(I, J))
    return out


def make_params(spec: FieldSpec, l: int, lp: int) -> CodeParams:
    if spec.q < 3:
        raise FieldTooSmall("q must be >= 3")
    if not 1 <= l <= lp:
        raise BadShape(f"need 1 <= l <= l', got l={l}, l'={lp}")
    m, delta = l + lp, l * lp
    k = comb(m, l)
    vandermonde = sum(comb(l, t) * comb(lp, t) for t in range(l + 1))
    if not k == vandermonde == len(minor_indices(l, lp)):
        raise AssertionError("dimension count mismatch")
    return CodeParams(spec, l, lp, m, delta, spec.q**delta, k, min_distance_formula(spec.q, l, lp), 3)


# -- coordinates -----------------------------------------------------------


def _weights(params: CodeParams) -> np.ndarray:
    return params.q ** np.arange(params.delta, dtype=np.int64)


def point_index(params: CodeParams, P) -> int:
    a = P.a if isinstance(P, MatFq) else np.asarray(P, dtype=np.int64)
    if a.shape != (params.l, params.lp):
        raise BadShape(f"expected a {params.l}x{params.lp} matrix, got {a.shape}")
    return int(a.ravel() @ _weights(params))


def points_to_indices(params: CodeParams, pts) -> np.ndarray:
    """Vectorized :func:`point_index` over an ``(..., l, l')`` stack."""
    pts = np.asarray(pts, dtype=np.int64)
    return pts.reshape(pts.shape[:-2] + (params.delta,)) @ _weights(params)


def index_digits(params: CodeParams, idx) -> np.ndarray:
    idx = np.asarray(idx, dtype=np.int64)
    return (idx[..., None] // _weights(params)) % params.q


def point_from_index(params: CodeParams, i: int) -> MatFq:
    if not 0 <= i < params.n:
        raise IndexOutOfRange(f"point index {i} outside 0..{params.n - 1}")
    return MatFq(params.spec, index_digits(params, i).reshape(params.l, params.lp))


@lru_cache(maxsize=16)
def all_points(params: CodeParams) -> np.ndarray:
    """Every point as an ``(n, l, l')`` array, in index order."""
    if params.n > MAX_GENERATOR_COLUMNS:
        raise TooLarge(f"n={params.n} points exceed the in-memory budget")
    pts = index_digits(params, np.arange(params.n)).reshape(params.n, params.l, params.lp)
    pts.setflags(write=False)
    return pts


def add_indices(params: CodeParams, i, j) -> np.ndarray:
    """Index of the matrix sum P_i + P_j (broadcasts over arrays)."""
    di, dj = index_digits(params, i), index_digits(params, j)
    return np.asarray(params.spec.add(di, dj), dtype=np.int64) @ _weights(params)


def neg_index(params: CodeParams, i) -> np.ndarray:
    return np.asarray(params.spec.neg(index_digits(params, i)), dtype=np.int64) @ _weights(params)


# -- minors ----------------------------------------------------------------


def _perm_sign(perm: tuple[int, ...]) -> int:
    inv = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
    return -1 if inv % 2 else 1


def minor_values(spec: FieldSpec, idx: MinorIndex, pts) -> np.ndarray:
    """Value of minor ``idx`` at each matrix of an ``(N, l, l')`` stack (Leibniz expansion)."""
    pts = np.asarray(pts, dtype=np.int64)
    N = pts.shape[0]
    t = idx.size
    if t == 0:
        return np.ones(N, dtype=np.int64)
    sub = pts[:, list(idx.I)][:, :, list(idx.J)]
    acc = np.zeros(N, dtype=np.int64)
    for perm in itertools.permutations(range(t)):
        term = sub[:, 0, perm[0]]
        for i in range(1, t):
            term = spec.mul(term, sub[:, i, perm[i]])
        acc = spec.add(acc, term) if _perm_sign(perm) > 0 else spec.sub(acc, term)
    return np.asarray(acc, dtype=np.int64)


def evaluate_minor(idx: MinorIndex, P: MatFq) -> FieldElement:
    l, lp = P.shape
    if len(idx.I) != len(idx.J) or any(not 0 <= i < l for i in idx.I) or any(not 0 <= j < lp for j in idx.J):
        raise BadIndex(f"minor {idx} invalid for a {l}x{lp} matrix")
    if list(idx.I) != sorted(set(idx.I)) or list(idx.J) != sorted(set(idx.J)):
        raise BadIndex(f"minor {idx} must use ascending distinct indices")
    return FieldElement(P.spec, int(minor_values(P.spec, idx, P.a[None])[0]))


def evaluation_matrix(params: CodeParams, pts) -> np.ndarray:
    """k x N matrix of every minor evaluated at each point of the stack."""
    pts = np.asarray(pts, dtype=np.int64).reshape(-1, params.l, params.lp)
    return np.stack([minor_values(params.spec, idx, pts) for idx in minor_indices(params.l, params.lp)])


def generator_block(params: CodeParams, start: int, stop: int) -> np.ndarray:
    """Columns ``start:stop`` of the generator matrix, for streaming large codes."""
    start, stop = max(0, start), min(params.n, stop)
    pts = index_digits(params, np.arange(start, stop)).reshape(-1, params.l, params.lp)
    return evaluation_matrix(params, pts)


@lru_cache(maxsize=16)
def _generator_array(params: CodeParams) -> np.ndarray:
    G = evaluation_matrix(params, all_points(params))
    G.setflags(write=False)
    return G


def generator_matrix(params: CodeParams, max_columns: int = MAX_GENERATOR_COLUMNS) -> MatFq:
    """k x n generator matrix: rows in minor order, columns in point order."""
    if params.n > max_columns:
        raise TooLarge(f"n={params.n} exceeds {max_columns} columns; use generator_block")
    return MatFq(params.spec, _generator_array(params))


@lru_cache(maxsize=16)
def _generator_rref(params: CodeParams) -> tuple[np.ndarray, tuple[int, ...]]:
    R, piv = _rref_array(params.spec, _generator_array(params))
    if len(piv) != params.k:
        raise AssertionError(f"generator rank {len(piv)} != k={params.k}")
    R = R[: len(piv)]
    R.setflags(write=False)
    return R, tuple(piv)


def _as_word(params: CodeParams, w, length: int | None = None) -> np.ndarray:
    w = np.asarray([int(x) for x in w] if not isinstance(w, np.ndarray) else w, dtype=np.int64).ravel()
    length = params.n if length is None else length
    if w.shape[0] != length:
        raise LengthMismatch(f"expected length {length}, got {w.shape[0]}")
    if w.size and (w.min() < 0 or w.max() >= params.q):
        raise ValueError(f"symbols out of range for GF({params.q})")
    return w


def encode(params: CodeParams, message) -> np.ndarray:
    """Codeword of ``sum(message[i] * minor_i)``."""
    msg = _as_word(params, message, params.k)
    return params.spec.matmul(msg[None, :], _generator_array(params))[0]


def encode_many(params: CodeParams, messages) -> np.ndarray:
    msgs = np.asarray(messages, dtype=np.int64).reshape(-1, params.k)
    return params.spec.matmul(msgs, _generator_array(params))


def is_codeword(params: CodeParams, w) -> bool:
    """Row-space membership: ``w`` must reduce to zero against rref(G)."""
    w = _as_word(params, w)
    R, piv = _generator_rref(params)
    return in_rowspace(params.spec, R, piv, w)


def weight(w) -> int:
    return int(np.count_nonzero(np.asarray(w)))


# -- word strings ----------------------------------------------------------


def word_to_str(params: CodeParams, w) -> str:
    """Base-q digit string (0-9a-z) for q <= 36; comma-separated indices otherwise."""
    w = np.asarray(w, dtype=np.int64)
    if params.q <= len(_DIGITS):
        return "".join(_DIGITS[int(x)] for x in w)
    return ",".join(str(int(x)) for x in w)


def word_from_str(params: CodeParams, s: str, length: int | None = None) -> np.ndarray:
    s = s.strip()
    if params.q <= len(_DIGITS) and "," not in s:
        try:
            vals = [_DIGITS.index(ch) for ch in s.lower()]
        except ValueError as exc:
            raise ValueError(f"bad digit in word string {s!r}") from exc
    else:
        vals = [int(x) for x in s.split(",") if x]
    return _as_word(params, vals, length)
