"""
Covering with local parameters, then merging
============================================

A cheapest collection of (coloring, color set) pairs costs the same as
the best single coloring. Merging the collection gives that coloring,
and both encoders validate.
"""

from picod import PicodInstance, is_cf, validate_encoder
from picod.encoder import cover_mds_stack, mds_matrix
from picod.localcf import delta_of, exact_delta_k, exact_lambda_k, merge_collection

inst = PicodInstance(6, [[0, 1, 2], [2, 3], [3, 4, 5], [0, 5], [1, 4]])
delta, c, D = exact_delta_k(inst)
lam, col, sel = exact_lambda_k(inst)
print("delta =", delta, " lambda =", lam)

G = cover_mds_stack(col, sel, inst)
print("cover stack:", G.entries.shape, "valid:", validate_encoder(G, inst).ok)

merged, Dm = merge_collection(col, sel, inst)
print("merged coloring:", merged.assign, "CF:", is_cf(merged, inst))
print("merged local parameter:", delta_of(merged, Dm, inst))
print("single-coloring MDS valid:", validate_encoder(mds_matrix(merged, Dm, inst), inst).ok)
