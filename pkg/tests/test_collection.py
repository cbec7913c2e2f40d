import math
from collections import Counter
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from picod.coloring import KFoldColoring, exact_chi_cf, is_cf
from picod.collection import (
    ColoringCollection,
    binary_collection,
    bucket_cover,
    bucket_decomposition,
    build_log2_collection,
    covered_edges,
    exact_alpha_cf,
    is_cf_collection,
    min_cover_dp,
    prune_collection,
    random_round_coloring,
    large_edge_budget,
)
from picod.errors import InvalidInputError, ResampleCapExceeded
from picod.instance import (
    PicodInstance,
    bounded_gamma_instance,
    complete_two_uniform,
    gamma,
    random_instance,
)

from conftest import tiny_instances


def alpha_by_relaxation(inst):
    """Cheapest cover by Bellman-style relaxation over raw product colorings."""
    n = inst.n
    full = (1 << n) - 1
    opts = {}
    for L in range(1, inst.m + 1):
        for colors in product(range(L), repeat=inst.m):
            cov = 0
            for r, e in enumerate(inst.edges):
                cnt = Counter(colors[v] for v in e)
                if any(cnt[colors[v]] == 1 for v in e):
                    cov |= 1 << r
            if cov:
                opts[cov] = min(opts.get(cov, L), L)
    best = {0: 0}
    changed = True
    while changed:
        changed = False
        for s, cost in list(best.items()):
            for cov, L in opts.items():
                t = s | cov
                if cost + L < best.get(t, math.inf):
                    best[t] = cost + L
                    changed = True
    return best[full]


@pytest.mark.parametrize("m,total", [(2, 2), (4, 4), (8, 6), (5, 6)])
def test_binary_collection(m, total):
    col = binary_collection(m)
    assert col.total_colors == total
    assert is_cf_collection(col, complete_two_uniform(m))


def test_binary_collection_m4_members():
    col = binary_collection(4)
    assert [c.assign for c in col] == [
        ((0,), (1,), (0,), (1,)),
        ((0,), (0,), (1,), (1,)),
    ]


def test_collection_roundtrip_and_add():
    a = binary_collection(4)
    b = ColoringCollection.from_dict(a.to_dict())
    assert b == a
    assert len(a + b) == 4 and (a + b).total_colors == 8


def test_collection_mixed_k_rejected():
    with pytest.raises(InvalidInputError):
        ColoringCollection([KFoldColoring.scalar([0, 1]), KFoldColoring(2, 2, [(0, 1), (0, 1)])])


def test_min_cover_dp_small():
    opts = [(0b011, 3, "a"), (0b110, 3, "b"), (0b001, 1, "c"), (0b100, 1, "d"), (0b010, 5, "e")]
    cost, picks = min_cover_dp(3, opts)
    assert cost == 4 and sorted(picks) == ["b", "c"]
    assert min_cover_dp(2, [(0b01, 1, "x")]) is None


@settings(max_examples=25, deadline=None)
@given(tiny_instances(max_m=4, max_n=4))
def test_alpha_matches_relaxation(inst):
    a, col = exact_alpha_cf(inst, 1)
    assert a == alpha_by_relaxation(inst)
    assert col.total_colors == a and is_cf_collection(col, inst)


@settings(max_examples=30, deadline=None)
@given(tiny_instances(max_m=5, max_n=5))
def test_alpha_at_most_chi(inst):
    assert exact_alpha_cf(inst, 1)[0] <= exact_chi_cf(inst, 1)[0]


@settings(max_examples=20, deadline=None)
@given(tiny_instances(max_m=5, max_n=6), st.integers(1, 5))
def test_alpha_subadditive_over_edge_split(inst, cut):
    cut = min(cut, inst.n)
    if cut in (0, inst.n):
        return
    a = PicodInstance(inst.m, inst.edges[:cut])
    b = PicodInstance(inst.m, inst.edges[cut:])
    assert exact_alpha_cf(inst)[0] <= exact_alpha_cf(a)[0] + exact_alpha_cf(b)[0]


def test_covered_edges(pent):
    col = ColoringCollection([KFoldColoring.scalar([0, 0, 0, 0, 0])])
    assert covered_edges(col, pent) == [False] * 5


def test_bucket_partition_gamma20():
    # edges of size 3 land in bucket 0 when Gamma = 20
    inst = random_instance(40, 30, (2, 7), seed=11)
    parts = bucket_decomposition(inst, 20)
    idx = sorted(list(parts.large) + [r for _, rs in parts.buckets for r in rs])
    assert idx == list(range(inst.n))
    k0, b0 = parts.buckets[0]
    assert all(len(inst.edges[r]) == 3 or len(inst.edges[r]) == 4 for r in b0)
    assert any(len(inst.edges[r]) == 3 for r in b0)
    assert all(len(inst.edges[r]) >= parts.kappa for r in parts.large)


def test_bucket_decomposition_rejects_small_gamma(pent):
    with pytest.raises(InvalidInputError, match="Gamma"):
        bucket_decomposition(pent)


@pytest.mark.parametrize("seed", range(50))
def test_bucket_cover_covers(seed):
    inst = bounded_gamma_instance(30, 20, (2, 4), seed=seed)
    g = max(gamma(inst).gamma, 3)
    col, _ = bucket_cover(inst.edges, inst.m, 2.0, g, seed=seed)
    assert len(col) == math.ceil(5 * 2.0 * math.log(g))
    assert is_cf_collection(col, inst)


def test_bucket_cover_cap():
    edges = [(0, 1, 2, 3)] * 3
    with pytest.raises(ResampleCapExceeded):
        # k_i = 1 paints every vertex color 0, so no round is ever conflict-free
        bucket_cover(edges, 4, 1.0, 3.0, seed=0, cap=5)


def test_round_coloring_concentration():
    c = random_round_coloring(20000, 0.25, seed=4)
    frac = sum(cs == (0,) for cs in c.assign) / 20000
    assert abs(frac - 0.25) < 0.02


def test_large_edge_budget():
    t, L = large_edge_budget(512, 4.0)
    assert t == math.ceil(math.log(512))
    assert L == math.ceil(4 * t * 512 ** (1 / t) * math.log(512))


def test_log2_fallback_small_gamma(pent):
    b = build_log2_collection(pent, seed=0)
    assert b.fallback and len(b.collection) == 1
    assert is_cf_collection(b.collection, pent)


@pytest.mark.parametrize("target", [8, 32])
@pytest.mark.parametrize("seed", range(3))
def test_log2_collection_verified(target, seed):
    inst = bounded_gamma_instance(48, target, (2, 8), seed=(target, seed))
    b = build_log2_collection(inst, seed=seed)
    assert not b.fallback
    assert is_cf_collection(b.collection, inst)
    assert b.total_colors <= b.unpruned_colors


def test_log2_deterministic():
    inst = bounded_gamma_instance(48, 32, (2, 8), seed=1)
    assert build_log2_collection(inst, seed=5) == build_log2_collection(inst, seed=5)


def test_prune_keeps_cover():
    inst = complete_two_uniform(6)
    col = binary_collection(6) + binary_collection(6)
    pruned = prune_collection(col, inst)
    assert is_cf_collection(pruned, inst)
    assert len(pruned) == 3


def test_every_member_cf_somewhere():
    inst = bounded_gamma_instance(48, 32, (2, 8), seed=3)
    col = build_log2_collection(inst, seed=3).collection
    for c in col:
        assert any(is_cf(c, PicodInstance(inst.m, [e])) for e in inst.edges)
    assert np.all(covered_edges(col, inst))
