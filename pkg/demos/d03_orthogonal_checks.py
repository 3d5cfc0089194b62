"""
Checks orthogonal on the zero matrix
====================================

Every nonzero matrix of rank r sits on exactly one check built from
2^r matrices of that rank plus the origin.
"""

from collections import Counter

from agc.agcode import make_params, point_from_index
from agc.bench import coverage, rank_census
from agc.gf import field_of_order
from agc.paritygen import build_orthogonal_set, check_count_terms, transport_to

params = make_params(field_of_order(3), 2, 2)
S = build_orthogonal_set(params)
print("J =", S.J, "per rank:", check_count_terms(3, 2, 2))
print("weights:", Counter(c.weight for c in S))

# one check of each rank
for chk in (S.checks[0], S.checks[-1]):
    print("rank", chk.rank, "check:")
    for i, coef in chk.entries:
        print("   coef", coef, "at", point_from_index(params, i).a.tolist())

# the supports tile the nonzero matrices
cov = coverage(S)
print("points covered:", len(cov), "max multiplicity:", max(cov.values()))
print("rank census:", rank_census(params))

# moving the anchor is just a translation
S40 = transport_to(S, 40)
S40.verify()
print("anchored at 40:", S40.anchor, "first check", S40.checks[0].entries)
