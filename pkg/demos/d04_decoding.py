"""
Majority-logic decoding
=======================

Flip 14 symbols of a codeword of length 81 and let the 28 checks vote.
"""

import numpy as np

from agc.agcode import encode, make_params
from agc.bench import SimConfig, simulate, success_rate
from agc.decoder import majority_decode, syndrome_votes
from agc.gf import field_of_order
from agc.paritygen import build_orthogonal_set

params = make_params(field_of_order(3), 2, 2)
S = build_orthogonal_set(params)
rng = np.random.default_rng(0)

c = encode(params, rng.integers(0, 3, size=params.k))
e = np.zeros(params.n, dtype=np.int64)
pos = rng.choice(params.n, size=S.J // 2, replace=False)
e[pos] = rng.integers(1, 3, size=pos.size)
r = params.spec.add(c, e)

# votes at an error position and at a clean one
votes = syndrome_votes(r, S)
print("votes at", pos[0], "(error", e[pos[0]], "):", votes[pos[0]])
clean = int(np.flatnonzero(e == 0)[0])
print("votes at", clean, "(clean):", votes[clean])

res = majority_decode(r, S)
print(res.status.value, "errors found:", len(res.error_positions()))
print("recovered the codeword:", np.array_equal(res.estimate, c))

# past the radius the decoder starts to fail
for t in (14, 20, 26, 32):
    rate = success_rate(simulate(SimConfig(params, t, 200, seed=1), S))
    print(f"t={t:2d} success {rate:.3f}")
