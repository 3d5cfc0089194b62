"""
How many errors per unit of distance
====================================

J/d for l = l' = 2 drifts toward 1/4 as the field grows.
"""

from fractions import Fraction

from agc.agcode import min_distance_formula
from agc.bench import ratio_table
from agc.paritygen import check_count_value

for row in ratio_table(2, 2, [3, 5, 7, 9, 11, 13, 17, 19]):
    print(f"q={row.q:2d} J={row.J:6d} d={row.d:8d} J/d={float(row.ratio):.4f}")

# even q drops half a pair, floor((q-1)/2) < (q-1)/2, so it starts much closer to 1/4
for q in (4, 8, 16):
    r = Fraction(check_count_value(q, 2, 2), min_distance_formula(q, 2, 2))
    print(f"even q={q:2d} J/d={float(r):.4f}")

# with l = 1 the target is 1/2
for q in (3, 5, 7, 9):
    r = Fraction(check_count_value(q, 1, 3), min_distance_formula(q, 1, 3))
    print(f"l=1 q={q} J/d={float(r):.4f}")
