"""
An affine Grassmann code and its parameters
===========================================

Evaluate every minor of a generic 2x2 matrix at all 81 matrices over GF(3).
"""

import numpy as np

from agc.agcode import encode, generator_matrix, is_codeword, make_params, minor_indices, point_from_index
from agc.bench import brute_min_distance, dual_distance_check
from agc.gf import field_of_order

params = make_params(field_of_order(3), 2, 2)
print(params)

# the k = 6 minors: the empty one, four 1x1 entries, the full determinant
for idx in minor_indices(2, 2):
    print("  rows", idx.I, "cols", idx.J)

G = generator_matrix(params)
print("generator shape", G.shape)
print("column for point 54:\n", point_from_index(params, 54).a, "->", G.a[:, 54])

# encode the determinant alone; its weight counts invertible matrices
c = encode(params, [0, 0, 0, 0, 0, 1])
print("weight of det codeword:", int(np.count_nonzero(c)))
print("is a codeword:", is_codeword(params, c))

# brute force agrees with the closed forms
print("brute minimum distance:", brute_min_distance(params), "formula:", params.d)
print("dual distance:", dual_distance_check(params).d_dual)
