"""Dense linear algebra over GF(q) and enumeration of subspaces and bases."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from agc.errors import FieldMismatch, NotInvertible, NotSquare
from agc.gf import FieldElement, FieldSpec


def _as_int(a) -> np.ndarray:
    return np.asarray(a, dtype=np.int64)


class MatFq:
    """A dense matrix of canonical field indices tied to a :class:`FieldSpec`.

    Entries live in ``self.a`` (a 2-D ``int64`` array).  Arithmetic operators
    are field operations; ``==`` compares field and entries.
    """

    __slots__ = ("spec", "a")

    def __init__(self, spec: FieldSpec, entries, shape: tuple[int, int] | None = None):
        a = _as_int(entries)
        if shape is not None:
            a = a.reshape(shape)
        if a.ndim == 1:
            a = a.reshape(1, -1)
        if a.ndim != 2:
            raise ValueError(f"expected a 2-D array, got shape {a.shape}")
        if a.size and (a.min() < 0 or a.max() >= spec.q):
            raise ValueError(f"entries out of range for GF({spec.q})")
        self.spec = spec
        self.a = a

    @classmethod
    def zeros(cls, spec: FieldSpec, rows: int, cols: int) -> MatFq:
        return cls(spec, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, spec: FieldSpec, n: int) -> MatFq:
        return cls(spec, np.eye(n, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape

    @property
    def T(self) -> MatFq:
        return MatFq(self.spec, self.a.T.copy())

    def _check(self, other: MatFq) -> None:
        if other.spec != self.spec:
            raise FieldMismatch(f"GF({self.spec.q}) vs GF({other.spec.q})")

    def __getitem__(self, key):
        out = self.a[key]
        if np.ndim(out) == 0:
            return FieldElement(self.spec, int(out))
        return out

    def __matmul__(self, other: MatFq) -> MatFq:
        self._check(other)
        return MatFq(self.spec, self.spec.matmul(self.a, other.a))

    def __add__(self, other: MatFq) -> MatFq:
        self._check(other)
        return MatFq(self.spec, self.spec.add(self.a, other.a))

    def __sub__(self, other: MatFq) -> MatFq:
        self._check(other)
        return MatFq(self.spec, self.spec.sub(self.a, other.a))

    def __neg__(self) -> MatFq:
        return MatFq(self.spec, self.spec.neg(self.a))

    def scale(self, c) -> MatFq:
        return MatFq(self.spec, self.spec.mul(int(c), self.a))

    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, MatFq):
            return NotImplemented
        return self.spec == other.spec and self.a.shape == other.a.shape and bool(np.all(self.a == other.a))

    def __hash__(self):
        return hash((self.spec, self.a.shape, self.a.tobytes()))

    def __repr__(self):
        return f"MatFq(GF{self.spec.q}, {self.a.tolist()})"

    def tolist(self) -> list[list[int]]:
        return self.a.tolist()

    def copy(self) -> MatFq:
        return MatFq(self.spec, self.a.copy())


# -- elimination -----------------------------------------------------------


def _rref_array(spec: FieldSpec, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    a = _as_int(a).copy()
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = spec.mul(int(spec.inv(int(a[r, c]))), a[r])
        f = a[:, c].copy()
        f[r] = 0
        if f.any():
            a = _as_int(spec.sub(a, spec.mul(f[:, None], a[r][None, :])))
        pivots.append(c)
        r += 1
    return a, pivots


def rref(M: MatFq) -> tuple[MatFq, int, tuple[int, ...]]:
    """Reduced row-echelon form, rank and pivot columns."""
    a, pivots = _rref_array(M.spec, M.a)
    return MatFq(M.spec, a), len(pivots), tuple(pivots)


def rank(M: MatFq) -> int:
    return len(_rref_array(M.spec, M.a)[1])


def nullspace(M: MatFq) -> list[np.ndarray]:
    """Basis of ``{v : M v = 0}``; one vector per non-pivot column."""
    spec = M.spec
    R, pivots = _rref_array(spec, M.a)
    free = [c for c in range(M.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = np.zeros(M.cols, dtype=np.int64)
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = spec.neg(int(R[i, f]))
        basis.append(v)
    for v in basis:
        if spec.matmul(M.a, v[:, None]).any():
            raise AssertionError("nullspace vector failed verification")
    return basis


def det(M: MatFq) -> FieldElement:
    """Determinant by elimination; the 0x0 determinant is 1."""
    if M.rows != M.cols:
        raise NotSquare(f"determinant of a {M.rows}x{M.cols} matrix")
    spec = M.spec
    a = M.a.copy()
    n = M.rows
    acc = 1
    for c in range(n):
        nz = np.flatnonzero(a[c:, c])
        if nz.size == 0:
            return FieldElement(spec, 0)
        i = c + int(nz[0])
        if i != c:
            a[[c, i]] = a[[i, c]]
            acc = int(spec.neg(acc))
        piv = int(a[c, c])
        acc = int(spec.mul(acc, piv))
        f = _as_int(spec.mul(a[c + 1:, c], int(spec.inv(piv))))
        a[c + 1:] = spec.sub(a[c + 1:], spec.mul(f[:, None], a[c][None, :]))
    return FieldElement(spec, acc)


def inverse(M: MatFq) -> MatFq:
    if M.rows != M.cols:
        raise NotSquare(f"inverse of a {M.rows}x{M.cols} matrix")
    n = M.rows
    aug = np.hstack([M.a, np.eye(n, dtype=np.int64)])
    R, pivots = _rref_array(M.spec, aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise NotInvertible("matrix is singular")
    return MatFq(M.spec, R[:, n:])


def outer(spec: FieldSpec, x, y) -> MatFq:
    """``x^T y`` for a length-l vector ``x`` and length-l' vector ``y``."""
    x, y = _as_int(x).ravel(), _as_int(y).ravel()
    return MatFq(spec, spec.mul(x[:, None], y[None, :]))


def batch_rank(spec: FieldSpec, mats) -> np.ndarray:
    """Rank of each matrix in an ``(N, a, b)`` stack, eliminated in lockstep."""
    M = _as_int(mats).copy()
    N, a, b = M.shape
    used = np.zeros((N, a), dtype=bool)
    ranks = np.zeros(N, dtype=np.int64)
    rows = np.arange(N)
    for c in range(b):
        cand = (M[:, :, c] != 0) & ~used
        has = cand.any(axis=1)
        if not has.any():
            continue
        piv = np.argmax(cand, axis=1)
        prow = M[rows, piv]
        pval = np.where(has, prow[:, c], 1)
        factor = _as_int(spec.mul(M[:, :, c], spec.inv(pval)[:, None]))
        factor[~has] = 0
        factor[rows, piv] = 0
        M = _as_int(spec.sub(M, spec.mul(factor[:, :, None], prow[:, None, :])))
        used[rows[has], piv[has]] = True
        ranks += has
    return ranks


def in_rowspace(spec: FieldSpec, R: np.ndarray, pivots, v) -> bool:
    """Whether ``v`` reduces to zero against an RREF matrix ``R`` with ``pivots``."""
    v = _as_int(v).copy()
    for i, c in enumerate(pivots):
        if v[c]:
            v = _as_int(spec.sub(v, spec.mul(int(v[c]), R[i])))
    return not v.any()


def complete_basis(spec: FieldSpec, vectors, n: int) -> np.ndarray:
    """Extend independent row vectors to a basis of GF(q)^n with standard vectors."""
    rows = [r for r in _as_int(vectors).reshape(-1, n)]
    for j in range(n):
        if len(rows) == n:
            break
        e = np.zeros(n, dtype=np.int64)
        e[j] = 1
        if len(_rref_array(spec, np.array(rows + [e]))[1]) == len(rows) + 1:
            rows.append(e)
    return np.array(rows, dtype=np.int64).reshape(n, n)


# -- subspaces -------------------------------------------------------------


def gaussian_binomial(n: int, r: int, q: int) -> int:
    """Number of r-dimensional subspaces of GF(q)^n."""
    if r < 0 or r > n:
        return 0
    num = den = 1
    for i in range(r):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def count_normalized_bases(r: int, q: int) -> int:
    num = 1
    for i in range(r):
        num *= q**r - q**i
    return num // (q - 1) ** r


@dataclass(frozen=True, eq=False)
class SubspaceBasis:
    """Ordered basis (rows of ``vectors``) of an r-dimensional subspace of GF(q)^n."""

    spec: FieldSpec
    vectors: np.ndarray
    ambient_dim: int = field(default=-1)

    def __post_init__(self):
        v = _as_int(self.vectors)
        n = self.ambient_dim if self.ambient_dim >= 0 else v.shape[-1]
        v = v.reshape(-1, n)
        v.setflags(write=False)
        object.__setattr__(self, "vectors", v)
        object.__setattr__(self, "ambient_dim", n)
        if len(_rref_array(self.spec, v)[1]) != v.shape[0]:
            raise ValueError("basis vectors are linearly dependent")

    @property
    def r(self) -> int:
        return self.vectors.shape[0]

    def key(self) -> tuple:
        return tuple(map(tuple, self.vectors.tolist()))

    def __eq__(self, other):
        return isinstance(other, SubspaceBasis) and self.spec == other.spec and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"SubspaceBasis(n={self.ambient_dim}, {self.vectors.tolist()})"

    def span(self) -> np.ndarray:
        """All q^r vectors of the subspace, in coefficient-index order."""
        q = self.spec.q
        coeffs = np.array(list(itertools.product(range(q), repeat=self.r)), dtype=np.int64)
        if self.r == 0:
            return np.zeros((1, self.ambient_dim), dtype=np.int64)
        return self.spec.matmul(coeffs.reshape(-1, self.r), self.vectors)

    def canonical(self) -> SubspaceBasis:
        """The RREF basis of the same subspace."""
        R, piv = _rref_array(self.spec, self.vectors)
        return SubspaceBasis(self.spec, R[: len(piv)], self.ambient_dim)


def enumerate_subspaces(spec: FieldSpec, n: int, r: int) -> list[SubspaceBasis]:
    """Every r-dimensional subspace of GF(q)^n, each as its RREF basis."""
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= n, got r={r}, n={n}")
    out = []
    for pivots in itertools.combinations(range(n), r):
        pset = set(pivots)
        free = [(i, j) for i, c in enumerate(pivots) for j in range(c + 1, n) if j not in pset]
        for vals in itertools.product(range(spec.q), repeat=len(free)):
            m = np.zeros((r, n), dtype=np.int64)
            for i, c in enumerate(pivots):
                m[i, c] = 1
            for (i, j), v in zip(free, vals):
                m[i, j] = v
            out.append(SubspaceBasis(spec, m, n))
    return out


def normalized_ordered_bases(W: SubspaceBasis) -> list[SubspaceBasis]:
    """All ordered bases of ``W`` whose vectors each have leading coefficient 1.

    These form a transversal of the per-vector scaling action, so two
    distinct results always differ by an independent pair at some position.
    """
    spec, r = W.spec, W.r
    normed = []
    for v in W.span():
        nz = np.flatnonzero(v)
        if nz.size and v[nz[0]] == 1:
            normed.append(v)
    out: list[SubspaceBasis] = []

    def extend(chosen: list[np.ndarray]) -> None:
        if len(chosen) == r:
            out.append(SubspaceBasis(spec, np.array(chosen), W.ambient_dim))
            return
        for v in normed:
            trial = np.array(chosen + [v])
            if len(_rref_array(spec, trial)[1]) == len(chosen) + 1:
                extend(chosen + [v])

    extend([])
    return out
