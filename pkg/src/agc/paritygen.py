"""Orthogonal parity checks for affine Grassmann codes.

For every rank r = 1..l, every pair of r-dimensional subspaces (V, W) of
GF(q)^l and GF(q)^l', every normalized ordered basis B' of W and every
coefficient tuple drawn from consecutive powers of the primitive element,
the 2^r rank-r matrices

    sum_i a_i x_i^T y_i,   a_i in A_i

together with the zero matrix carry exactly one parity check (up to scale)
of the code.  All such checks meet only at the zero matrix, so they are
orthogonal on that coordinate.  Translations move the whole family to any
other coordinate.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import IO, Iterable

import numpy as np

from agc.agcode import (
    CodeParams,
    add_indices,
    evaluation_matrix,
    index_digits,
    make_params,
    neg_index,
    point_index,
    points_to_indices,
)
from agc.errors import (
    AnchorMissing,
    BadShape,
    DegenerateRestriction,
    FieldTooSmall,
    NotInvertible,
    OverlapDetected,
    RankMismatch,
)
from agc.falinalg import (
    MatFq,
    SubspaceBasis,
    batch_rank,
    complete_basis,
    enumerate_subspaces,
    inverse,
    nullspace,
    normalized_ordered_bases,
    rank,
)
from agc.gf import FieldSpec, field_of_order


@dataclass(frozen=True)
class CoefficientTuple:
    """r two-element subsets of GF(q)*, stored as ordered pairs of indices."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple((int(a), int(b)) for a, b in self.pairs)
        for a, b in pairs:
            if a == 0 or b == 0 or a == b:
                raise ValueError(f"coefficient set {{{a}, {b}}} must hold two distinct nonzero elements")
        object.__setattr__(self, "pairs", pairs)

    @property
    def r(self) -> int:
        return len(self.pairs)


def delta_pairs(spec: FieldSpec) -> list[tuple[int, int]]:
    """Pairs {alpha^(2i-1), alpha^(2i)} for i = 1..floor((q-1)/2)."""
    if spec.q < 3:
        raise FieldTooSmall("q must be >= 3")
    return [
        (spec.pow(spec.alpha, 2 * i - 1), spec.pow(spec.alpha, 2 * i))
        for i in range(1, (spec.q - 1) // 2 + 1)
    ]


def gqr_tuples(spec: FieldSpec, r: int) -> list[CoefficientTuple]:
    if r < 1:
        raise ValueError("r must be >= 1")
    return [CoefficientTuple(t) for t in itertools.product(delta_pairs(spec), repeat=r)]


@dataclass(frozen=True, eq=False)
class MSet:
    B: SubspaceBasis
    Bp: SubspaceBasis
    coeffs: CoefficientTuple
    members: np.ndarray  # (2^r, l, l')

    @property
    def r(self) -> int:
        return self.coeffs.r


def mset(B: SubspaceBasis, Bp: SubspaceBasis, coeffs: CoefficientTuple) -> MSet:
    """The 2^r matrices sum_i a_i x_i^T y_i with a_i from the i-th coefficient pair."""
    spec = B.spec
    r = coeffs.r
    if B.r != r or Bp.r != r:
        raise RankMismatch(f"bases of dimension {B.r}, {Bp.r} with a rank-{r} coefficient tuple")
    # rank-one pieces x_i^T y_i, shape (r, l, l')
    pieces = np.asarray(spec.mul(B.vectors[:, :, None], Bp.vectors[:, None, :]), dtype=np.int64)
    members = []
    for choice in itertools.product(*coeffs.pairs):
        M = np.zeros((B.ambient_dim, Bp.ambient_dim), dtype=np.int64)
        for a, piece in zip(choice, pieces):
            M = np.asarray(spec.add(M, spec.mul(a, piece)), dtype=np.int64)
        members.append(M)
    members = np.array(members, dtype=np.int64)
    if len({m.tobytes() for m in members}) != len(members) or np.any(batch_rank(spec, members) != r):
        raise RankMismatch("members are not 2^r distinct rank-r matrices")
    members.setflags(write=False)
    return MSet(B, Bp, coeffs, members)


@dataclass(frozen=True)
class SparseParityCheck:
    """A dual-code vector given by its nonzero ``(point index, coefficient)`` entries."""

    anchor: int
    entries: tuple[tuple[int, int], ...]
    rank: int = 0

    def __post_init__(self):
        entries = tuple(sorted((int(i), int(c)) for i, c in self.entries if c))
        object.__setattr__(self, "entries", entries)
        if dict(entries).get(self.anchor) != 1:
            raise ValueError("anchor coefficient must be 1")

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, _ in self.entries)

    @property
    def weight(self) -> int:
        return len(self.entries)

    def indices(self) -> np.ndarray:
        return np.array([i for i, _ in self.entries], dtype=np.int64)

    def coefficients(self) -> np.ndarray:
        return np.array([c for _, c in self.entries], dtype=np.int64)

    def to_dense(self, n: int) -> np.ndarray:
        v = np.zeros(n, dtype=np.int64)
        v[self.indices()] = self.coefficients()
        return v

    def syndrome(self, spec: FieldSpec, word) -> int:
        word = np.asarray(word, dtype=np.int64)
        return spec.dot(self.coefficients(), word[self.indices()])

    def remap(self, mapping: np.ndarray, anchor: int) -> SparseParityCheck:
        return SparseParityCheck(int(anchor), tuple(zip(mapping.tolist(), self.coefficients().tolist())), self.rank)


def local_check(params: CodeParams, S: MSet) -> SparseParityCheck:
    """The unique check supported on ``S.members`` plus the zero matrix, scaled to 1 at zero."""
    spec = params.spec
    r = S.r
    D = np.concatenate([np.zeros((1, params.l, params.lp), dtype=np.int64), S.members])
    E = MatFq(spec, evaluation_matrix(params, D))
    if rank(E) != 2**r:
        raise DegenerateRestriction(f"evaluation matrix on {len(D)} points has rank {rank(E)}, expected {2**r}")
    ns = nullspace(E)
    if len(ns) != 1:
        raise DegenerateRestriction(f"restricted dual has dimension {len(ns)}")
    v = ns[0]
    if v[0] == 0:
        raise AnchorMissing("local check vanishes at the zero matrix")
    v = np.asarray(spec.mul(int(spec.inv(int(v[0]))), v), dtype=np.int64)
    idx = points_to_indices(params, D)
    return SparseParityCheck(0, tuple(zip(idx.tolist(), v.tolist())), r)


# -- counting ----------------------------------------------------------------


def check_count_terms(q: int, l: int, lp: int) -> list[int]:
    """Number of orthogonal checks contributed by each rank r = 1..l."""
    terms = []
    for r in range(1, l + 1):
        num = ((q - 1) // 2) ** r
        den = (q - 1) ** r
        for i in range(r):
            num *= (q**l - q**i) * (q**lp - q**i)
            den *= q**r - q**i
        t, rem = divmod(num, den)
        if rem:
            raise AssertionError(f"inexact division in rank-{r} term")
        terms.append(t)
    return terms


def check_count_value(q: int, l: int, lp: int) -> int:
    return sum(check_count_terms(q, l, lp))


def check_count(params: CodeParams) -> int:
    return check_count_value(params.q, params.l, params.lp)


eq3_count = check_count  # name used by the operation table


# -- check sets ----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class OrthogonalCheckSet:
    params: CodeParams
    anchor: int
    checks: tuple[SparseParityCheck, ...] = field(default=())

    @property
    def J(self) -> int:
        return len(self.checks)

    def __len__(self):
        return len(self.checks)

    def __iter__(self):
        return iter(self.checks)

    def verify(self) -> None:
        """Raise unless every check has coefficient 1 at the anchor and supports meet only there."""
        seen: set[int] = set()
        for chk in self.checks:
            if chk.anchor != self.anchor or dict(chk.entries).get(self.anchor) != 1:
                raise ValueError("check does not have coefficient 1 at the anchor")
            rest = chk.support - {self.anchor}
            overlap = seen & rest
            if overlap:
                raise OverlapDetected(f"points {sorted(overlap)[:5]} appear in two checks")
            seen |= rest

    def check_matrix(self) -> np.ndarray:
        """Dense J x n matrix H of the checks."""
        return np.array([c.to_dense(self.params.n) for c in self.checks], dtype=np.int64).reshape(-1, self.params.n)


def _check_sort_key(chk: SparseParityCheck) -> tuple[int, int]:
    rest = [i for i in chk.support if i != chk.anchor]
    return chk.rank, min(rest) if rest else -1


def iter_msets(params: CodeParams, r: int) -> Iterable[MSet]:
    spec = params.spec
    tuples = gqr_tuples(spec, r)
    for V in enumerate_subspaces(spec, params.l, r):
        for W in enumerate_subspaces(spec, params.lp, r):
            for Bp in normalized_ordered_bases(W):
                for t in tuples:
                    yield mset(V, Bp, t)


def build_orthogonal_set(params: CodeParams) -> OrthogonalCheckSet:
    """All J checks orthogonal on the zero matrix."""
    checks = [local_check(params, S) for r in range(1, params.l + 1) for S in iter_msets(params, r)]
    checks.sort(key=_check_sort_key)
    out = OrthogonalCheckSet(params, 0, tuple(checks))
    out.verify()
    expected = check_count(params)
    if out.J != expected:
        raise AssertionError(f"built {out.J} checks, closed form gives {expected}")
    return out


# -- automorphisms -----------------------------------------------------------


def _stack_matmul(spec: FieldSpec, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Batched matrix product over GF(q); leading dimensions broadcast."""
    X = np.asarray(X, dtype=np.int64)
    Y = np.asarray(Y, dtype=np.int64)
    shape = np.broadcast_shapes(X.shape[:-2], Y.shape[:-2]) + (X.shape[-2], Y.shape[-1])
    acc = np.zeros(shape, dtype=np.int64)
    for t in range(X.shape[-1]):
        acc = np.asarray(spec.add(acc, spec.mul(X[..., :, t, None], Y[..., None, t, :])), dtype=np.int64)
    return acc


@dataclass(frozen=True, eq=False)
class AffineAutomorphism:
    """Coordinate permutation induced by P -> B P A^-1 + u."""

    u: MatFq
    A: MatFq
    B: MatFq

    def __post_init__(self):
        l, lp = self.u.shape
        if self.A.shape != (lp, lp) or self.B.shape != (l, l):
            raise BadShape("A must be l' x l' and B must be l x l")
        try:
            object.__setattr__(self, "_Ainv", inverse(self.A).a)
            inverse(self.B)
        except NotInvertible as exc:
            raise NotInvertible("automorphism matrices must be invertible") from exc

    @classmethod
    def translation(cls, u: MatFq) -> AffineAutomorphism:
        l, lp = u.shape
        return cls(u, MatFq.identity(u.spec, lp), MatFq.identity(u.spec, l))

    def map_points(self, pts) -> np.ndarray:
        spec = self.u.spec
        out = _stack_matmul(spec, _stack_matmul(spec, self.B.a, pts), self._Ainv)
        return np.asarray(spec.add(out, self.u.a), dtype=np.int64)

    def map_point(self, P: MatFq) -> MatFq:
        return MatFq(P.spec, self.map_points(P.a[None])[0])

    def map_indices(self, params: CodeParams, idx) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64)
        pts = index_digits(params, idx).reshape(idx.shape + (params.l, params.lp))
        return points_to_indices(params, self.map_points(pts))


def random_invertible(spec: FieldSpec, n: int, rng: np.random.Generator) -> MatFq:
    while True:
        M = MatFq(spec, rng.integers(0, spec.q, size=(n, n)))
        if rank(M) == n:
            return M


def random_automorphism(params: CodeParams, rng: np.random.Generator) -> AffineAutomorphism:
    spec = params.spec
    u = MatFq(spec, rng.integers(0, spec.q, size=(params.l, params.lp)))
    return AffineAutomorphism(u, random_invertible(spec, params.lp, rng), random_invertible(spec, params.l, rng))


def apply_automorphism(params: CodeParams, obj, aut: AffineAutomorphism):
    """Move the symbol at P to coordinate B P A^-1 + u.

    ``obj`` may be a word (1-D array), a :class:`SparseParityCheck` or an
    :class:`OrthogonalCheckSet`; the result has the same kind.
    """
    if isinstance(obj, SparseParityCheck):
        moved = aut.map_indices(params, obj.indices())
        return obj.remap(moved, int(aut.map_indices(params, obj.anchor)))
    if isinstance(obj, OrthogonalCheckSet):
        checks = tuple(apply_automorphism(params, c, aut) for c in obj.checks)
        return OrthogonalCheckSet(params, int(aut.map_indices(params, obj.anchor)), checks)
    w = np.asarray(obj, dtype=np.int64)
    perm = aut.map_indices(params, np.arange(params.n))
    out = np.zeros_like(w)
    out[perm] = w
    return out


def basis_automorphism(params: CodeParams, B: SubspaceBasis, Bp: SubspaceBasis) -> AffineAutomorphism:
    """Linear automorphism taking diag-supported matrices sum a_i E_ii to sum a_i x_i^T y_i."""
    spec = params.spec
    X = complete_basis(spec, B.vectors, params.l)
    Y = complete_basis(spec, Bp.vectors, params.lp)
    zero = MatFq.zeros(spec, params.l, params.lp)
    return AffineAutomorphism(zero, inverse(MatFq(spec, Y)), MatFq(spec, X.T.copy()))


def transport_to(check_set: OrthogonalCheckSet, P) -> OrthogonalCheckSet:
    """Translate a check set so that it is anchored at ``P`` (a matrix or point index)."""
    params = check_set.params
    target = P if isinstance(P, (int, np.integer)) else point_index(params, P)
    shift = int(add_indices(params, target, neg_index(params, check_set.anchor)))
    if shift == 0:
        return check_set
    checks = tuple(c.remap(add_indices(params, c.indices(), shift), int(target)) for c in check_set.checks)
    return OrthogonalCheckSet(params, int(target), checks)


# -- check-set files ---------------------------------------------------------

HEADER = "AGC-CHECKS v1"


def dump_check_set(check_set: OrthogonalCheckSet, fh: IO[str]) -> None:
    p = check_set.params
    fh.write(f"{HEADER}\n")
    fh.write(f"q={p.q} l={p.l} lp={p.lp} anchor={check_set.anchor} J={check_set.J}\n")
    for c in check_set.checks:
        fh.write("chk " + " ".join(f"{i}:{v}" for i, v in c.entries) + "\n")


def write_check_set(check_set: OrthogonalCheckSet, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        dump_check_set(check_set, fh)


def load_check_set(fh: IO[str]) -> OrthogonalCheckSet:
    lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines or lines[0] != HEADER:
        raise ValueError(f"missing {HEADER!r} header")
    try:
        kv = dict(tok.split("=", 1) for tok in lines[1].split())
        q, l, lp, anchor, J = (int(kv[k]) for k in ("q", "l", "lp", "anchor", "J"))
    except (IndexError, KeyError, ValueError) as exc:
        raise ValueError("malformed parameter line") from exc
    params = make_params(field_of_order(q), l, lp)
    checks = []
    for ln in lines[2:]:
        head, *toks = ln.split()
        if head != "chk":
            raise ValueError(f"unexpected line {ln!r}")
        entries = tuple(tuple(int(x) for x in tok.split(":")) for tok in toks)
        idx = np.array([i for i, _ in entries if i != anchor], dtype=np.int64)
        rel = add_indices(params, idx, neg_index(params, anchor))
        pts = index_digits(params, rel).reshape(-1, l, lp)
        ranks = set(batch_rank(params.spec, pts).tolist())
        checks.append(SparseParityCheck(anchor, entries, ranks.pop() if len(ranks) == 1 else 0))
    if len(checks) != J:
        raise ValueError(f"header says J={J} but file holds {len(checks)} checks")
    out = OrthogonalCheckSet(params, anchor, tuple(checks))
    out.verify()
    return out


def read_check_set(path: str | os.PathLike) -> OrthogonalCheckSet:
    with open(path, encoding="ascii") as fh:
        return load_check_set(fh)
