"""
Finite fields and linear algebra over GF(q)
===========================================

Build a few small fields, look at their tables, and run elimination.
"""

import numpy as np

from agc.falinalg import MatFq, det, enumerate_subspaces, nullspace, rank, rref
from agc.gf import field_of_order

# GF(9) is built from the smallest monic irreducible over GF(3)
F9 = field_of_order(9)
print(F9.serialize())

# elements are integers 0..q-1, read as base-p coefficient vectors
a = F9.primitive
print("powers of alpha:", [int(a**i) for i in range(1, 9)])

# the arithmetic works elementwise on whole arrays
x = np.arange(9)
print("x * x^-1 for x != 0:", F9.mul(x[1:], F9.inv(x[1:])))

# elimination over GF(5)
F5 = field_of_order(5)
M = MatFq(F5, [[1, 2, 3, 4], [2, 4, 1, 3], [3, 1, 4, 0]])
R, rk, piv = rref(M)
print("rref:\n", R.a, "\nrank", rk, "pivots", piv)
for v in nullspace(M):
    print("null vector", v, "-> M v =", F5.matmul(M.a, v[:, None]).ravel())

# determinants of square blocks
print("det of the lower right 2x2 block:", int(det(MatFq(F5, M.a[1:, 2:]))))

# there are [4 choose 2]_3 = 130 planes in GF(3)^4
print("2-dim subspaces of GF(3)^4:", len(enumerate_subspaces(field_of_order(3), 4, 2)))
print("rank of the square block [[1,2],[2,4]]:", rank(MatFq(F5, [[1, 2], [2, 4]])))
