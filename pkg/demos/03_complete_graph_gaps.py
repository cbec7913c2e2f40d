"""
How far apart the parameters can be
===================================

All pairs of m messages as request sets. One coloring needs m colors,
a collection of binary colorings needs 2*ceil(log2 m), and the local
parameter stays at 2.
"""

import math

from picod import binary_collection, complete_two_uniform, exact_chi_cf, is_cf_collection
from picod.localcf import exact_delta_k

print(" m  chi  binary  delta")
for m in range(3, 9):
    inst = complete_two_uniform(m)
    col = binary_collection(m)
    assert is_cf_collection(col, inst)
    assert col.total_colors == 2 * math.ceil(math.log2(m))
    print(f"{m:2d}  {exact_chi_cf(inst)[0]:3d}  {col.total_colors:6d}  {exact_delta_k(inst)[0]:5d}")
