import itertools

import numpy as np
import pytest

from agc.errors import NotInvertible, NotSquare
from agc.falinalg import (
    MatFq,
    SubspaceBasis,
    batch_rank,
    complete_basis,
    count_normalized_bases,
    det,
    enumerate_subspaces,
    gaussian_binomial,
    inverse,
    normalized_ordered_bases,
    nullspace,
    outer,
    rank,
    rref,
)
from agc.gf import field_of_order, make_field


def leibniz_det(F, a):
    """Permutation expansion, independent of elimination."""
    n = len(a)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i, j in itertools.combinations(perm, 2) if i > j)
        term = 1
        for i in range(n):
            term = int(F.mul(term, int(a[i][perm[i]])))
        total = int(F.add(total, term) if inversions % 2 == 0 else F.sub(total, term))
    return total


def minor_rank(F, a):
    """Largest t with a nonvanishing t x t minor."""
    a = np.asarray(a)
    rows, cols = a.shape
    for t in range(min(rows, cols), 0, -1):
        for I in itertools.combinations(range(rows), t):
            for J in itertools.combinations(range(cols), t):
                if leibniz_det(F, a[np.ix_(I, J)]):
                    return t
    return 0


def q_binomial_product(n, r, q):
    num = den = 1
    for i in range(r):
        num *= q**n - q**i
        den *= q**r - q**i
    return num // den


F3 = make_field(3)


def test_rref_examples():
    R, rk, piv = rref(MatFq.zeros(F3, 2, 3))
    assert rk == 0 and piv == ()
    R, rk, piv = rref(MatFq.identity(F3, 2))
    assert rk == 2 and piv == (0, 1)
    R, rk, piv = rref(MatFq(F3, [[1, 2], [2, 1]]))
    assert rk == 1
    assert R.tolist() == [[1, 2], [0, 0]]


def test_nullspace_examples():
    assert nullspace(MatFq.identity(F3, 3)) == []
    (v,) = nullspace(MatFq(F3, [[1, 1, 1], [0, 1, 2]]))
    assert v.tolist() == [1, 1, 1]
    assert len(nullspace(MatFq.zeros(F3, 2, 2))) == 2


def test_det_examples():
    assert det(MatFq(F3, np.zeros((0, 0)), shape=(0, 0))) == 1
    assert det(MatFq.identity(F3, 3)) == 1
    assert det(MatFq(F3, [[1, 2], [2, 1]])) == 0
    with pytest.raises(NotSquare):
        det(MatFq(F3, [[1, 2, 0]]))


def test_outer_examples():
    e1 = [1, 0]
    assert outer(F3, e1, e1).tolist() == [[1, 0], [0, 0]]
    assert outer(F3, [0, 0], [1, 1]).tolist() == [[0, 0], [0, 0]]
    M = outer(F3, [1, 2], [1, 1])
    assert M.tolist() == [[1, 1], [2, 2]]
    assert rank(M) == 1


@pytest.mark.parametrize("q", [3, 4])
def test_rank_equals_largest_nonvanishing_minor(q):
    F = field_of_order(q)
    rng = np.random.default_rng(q)
    shapes = [(2, 2), (2, 3), (3, 3), (3, 2)]
    for shape in shapes:
        for _ in range(60):
            a = rng.integers(0, q, size=shape)
            # bias toward low rank so every rank value shows up
            if rng.random() < 0.4:
                a[-1] = F.mul(int(rng.integers(0, q)), a[0])
            assert rank(MatFq(F, a)) == minor_rank(F, a)


def test_rank_exhaustive_2x2_gf3():
    for vals in itertools.product(range(3), repeat=4):
        a = np.array(vals).reshape(2, 2)
        assert rank(MatFq(F3, a)) == minor_rank(F3, a)


@pytest.mark.parametrize("q", [3, 4, 5, 9])
def test_rank_nullity(q):
    F = field_of_order(q)
    rng = np.random.default_rng(100 + q)
    for _ in range(200):
        rows, cols = rng.integers(1, 6, size=2)
        M = MatFq(F, rng.integers(0, q, size=(rows, cols)))
        ns = nullspace(M)
        assert rank(M) + len(ns) == cols
        for v in ns:
            assert not F.matmul(M.a, v[:, None]).any()


@pytest.mark.parametrize("q", [3, 4, 5])
def test_det_matches_leibniz_and_is_multiplicative(q):
    F = field_of_order(q)
    rng = np.random.default_rng(7 * q)
    for _ in range(50):
        n = int(rng.integers(1, 4))
        A = MatFq(F, rng.integers(0, q, size=(n, n)))
        B = MatFq(F, rng.integers(0, q, size=(n, n)))
        assert det(A) == leibniz_det(F, A.a)
        assert det(A @ B) == det(A) * det(B)


def test_inverse():
    F = field_of_order(5)
    A = MatFq(F, [[1, 2], [3, 4]])
    assert A @ inverse(A) == MatFq.identity(F, 2)
    with pytest.raises(NotInvertible):
        inverse(MatFq(F, [[1, 2], [2, 4]]))


@pytest.mark.parametrize("q", [3, 4])
def test_batch_rank_matches_rank(q):
    F = field_of_order(q)
    rng = np.random.default_rng(q)
    mats = rng.integers(0, q, size=(300, 3, 4))
    mats[::3, 2] = 0
    mats[::5, 1] = mats[::5, 0]
    assert batch_rank(F, mats).tolist() == [rank(MatFq(F, m)) for m in mats]


def test_complete_basis():
    F = field_of_order(3)
    X = complete_basis(F, [[0, 1, 1]], 3)
    assert X[0].tolist() == [0, 1, 1]
    assert rank(MatFq(F, X)) == 3


def test_gaussian_binomial_closed_forms():
    for q in (3, 4, 5):
        for n in range(5):
            for r in range(n + 1):
                assert gaussian_binomial(n, r, q) == q_binomial_product(n, r, q)


def test_enumerate_subspaces_examples():
    assert len(enumerate_subspaces(F3, 2, 1)) == 4
    (empty,) = enumerate_subspaces(F3, 3, 0)
    assert empty.r == 0
    (whole,) = enumerate_subspaces(F3, 2, 2)
    assert whole.vectors.tolist() == [[1, 0], [0, 1]]


@pytest.mark.parametrize("q", [3, 4, 5])
def test_enumerate_subspaces_counts(q):
    F = field_of_order(q)
    for n in range(1, 5):
        for r in range(n + 1):
            subs = enumerate_subspaces(F, n, r)
            assert len(subs) == q_binomial_product(n, r, q)
            assert len({s.key() for s in subs}) == len(subs)
            for s in subs[:: max(1, len(subs) // 20)]:
                assert s.canonical() == s


def test_enumerate_subspaces_brute_force():
    # canonicalize every pair of independent vectors in GF(3)^3
    vecs = [np.array(v) for v in itertools.product(range(3), repeat=3)]
    seen = set()
    for a, b in itertools.combinations(vecs, 2):
        if rank(MatFq(F3, [a, b])) == 2:
            seen.add(SubspaceBasis(F3, np.array([a, b])).canonical().key())
    assert seen == {s.key() for s in enumerate_subspaces(F3, 3, 2)}


@pytest.mark.parametrize(
    "q,r,expected",
    [(3, 1, 1), (3, 2, 12), (5, 2, 30), (4, 2, 20), (7, 2, 56)],
)
def test_normalized_ordered_bases_counts(q, r, expected):
    F = field_of_order(q)
    (W,) = enumerate_subspaces(F, r, r)
    bases = normalized_ordered_bases(W)
    assert len(bases) == expected == count_normalized_bases(r, q)


def test_normalized_bases_of_proper_subspace():
    F = field_of_order(3)
    for W in enumerate_subspaces(F, 3, 2):
        bases = normalized_ordered_bases(W)
        assert len(bases) == 12
        span = {tuple(v) for v in W.span().tolist()}
        for B in bases:
            assert all(tuple(v) in span for v in B.vectors.tolist())


def test_distinct_normalized_bases_differ_by_independent_pair():
    (W,) = enumerate_subspaces(F3, 2, 2)
    bases = normalized_ordered_bases(W)
    for B1, B2 in itertools.combinations(bases, 2):
        assert any(rank(MatFq(F3, [y, z])) == 2 for y, z in zip(B1.vectors, B2.vectors))


def test_dependent_basis_rejected():
    with pytest.raises(ValueError):
        SubspaceBasis(F3, np.array([[1, 2], [2, 1]]))
