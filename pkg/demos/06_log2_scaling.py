"""
Colors against the intersection degree
======================================

The randomized construction's total palette grows slowly with Gamma,
the largest number of other request sets any set meets.
"""

from picod.bench import medians_by_target, run_bench

rows = run_bench(gammas=(8, 32, 128, 512), seeds=range(5))
assert all(r.verified for r in rows)
med = medians_by_target(rows)
for g, v in med.items():
    print(f"Gamma <= {g:3d}: median total colors {v}")
print(f"growth 8 -> 512: {med[512] / med[8]:.2f}x")
