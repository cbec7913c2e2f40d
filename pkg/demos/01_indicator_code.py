"""
Indicator codes from a conflict-free coloring
=============================================

Eight messages, eight receivers. Two colors are enough for a
conflict-free coloring, so two transmissions satisfy everyone.
"""

import numpy as np

from picod import example2, exact_chi_cf, indicator_matrix, validate_encoder
from picod.encoder import decode, encode, satisfies_receiver

inst = example2()
print("request sets (0-based):", inst.edges)

# The exhaustive search returns the lexicographically first optimal coloring.
L, c = exact_chi_cf(inst)
print("colors needed:", L, "->", [cs[0] for cs in c.assign])

# Column i of the encoder is the basis vector of vertex i's color.
G = indicator_matrix(c)
print(G.entries)
print("valid:", validate_encoder(G, inst).ok)

# Broadcast random bits and let every receiver decode something new.
x = np.random.default_rng(0).integers(0, 2, size=8)
y = encode(G, x)
for r in range(inst.n):
    v = satisfies_receiver(G, inst, r)
    side = {i: x[i : i + 1] for i in inst.side_information(r)}
    d, xd = decode(v, G, y, side, inst)
    print(f"receiver {r}: decodes message {d} = {xd[0]} (true {x[d]})")
