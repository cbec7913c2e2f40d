"""
Ground truth on tiny instances
==============================

Brute force over all short binary encoders gives the optimal length,
which sits below every coloring parameter.
"""

from picod import complete_two_uniform, pentagon
from picod.oracle import brute_force_length, certify_chain

for name, inst in [("K4", complete_two_uniform(4)), ("pentagon", pentagon())]:
    L, G = brute_force_length(inst)
    print(f"{name}: optimal length {L}")
    print(G.entries)
    rep = certify_chain(inst)
    print("  chain:", {k: v for k, v in rep.to_dict().items() if k != "violations"})
