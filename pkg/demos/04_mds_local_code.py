"""
Two transmissions for 45 receivers
==================================

With all 10 colors essential, every edge of the complete graph sees just
2 of them, so a [10, 2] MDS code over GF(11) serves all 45 receivers.
"""

import numpy as np

from picod import KFoldColoring, complete_two_uniform, mds_matrix, validate_encoder
from picod.encoder import decode, encode, satisfies_receiver

inst = complete_two_uniform(10)
c = KFoldColoring.scalar(range(10))
G = mds_matrix(c, range(10), inst, q=11)
print(G.entries)
print("valid:", validate_encoder(G, inst).ok)

x = np.random.default_rng(1).integers(0, 11, size=(10, 1))
y = encode(G, x.reshape(-1))
ok = 0
for r in range(inst.n):
    v = satisfies_receiver(G, inst, r)
    d, xd = decode(v, G, y, {i: x[i] for i in inst.side_information(r)}, inst)
    ok += int(xd[0] == x[d, 0])
print(f"{ok}/{inst.n} receivers decoded correctly")
