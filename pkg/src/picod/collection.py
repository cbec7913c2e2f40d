"""Conflict-free collections of colorings and their covering number.

Includes the exact covering-number search, the binary construction for
complete 2-uniform instances, and the randomized construction whose color
count grows like ``log(Gamma)**2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .coloring import (
    KFoldColoring,
    _edge_is_cf,
    cf_edge_mask,
    enumerate_colorings,
    greedy_cf_coloring,
)
from .errors import BudgetExceeded, InvalidInputError, ResampleCapExceeded
from .instance import PicodInstance, bucket_thresholds, gamma, kappa_of


@dataclass(frozen=True)
class ColoringCollection:
    """Ordered colorings sharing a vertex set and fold, each with its own palette."""

    colorings: tuple[KFoldColoring, ...]
    k: int

    def __init__(self, colorings: Sequence[KFoldColoring], k: int | None = None):
        colorings = tuple(colorings)
        if colorings:
            ks = {c.k for c in colorings}
            ms = {c.m for c in colorings}
            if len(ks) != 1 or len(ms) != 1:
                raise InvalidInputError("collection members must share fold k and vertex set")
            if k is not None and k not in ks:
                raise InvalidInputError(f"collection declares k={k} but members use {ks}")
            k = colorings[0].k
        object.__setattr__(self, "colorings", colorings)
        object.__setattr__(self, "k", 1 if k is None else int(k))

    @property
    def total_colors(self) -> int:
        return sum(c.L for c in self.colorings)

    def __len__(self) -> int:
        return len(self.colorings)

    def __iter__(self):
        return iter(self.colorings)

    def __add__(self, other: "ColoringCollection") -> "ColoringCollection":
        return ColoringCollection(self.colorings + other.colorings)

    def to_dict(self) -> dict:
        return {"k": self.k, "colorings": [c.to_dict() for c in self.colorings]}

    @classmethod
    def from_dict(cls, data: dict) -> "ColoringCollection":
        try:
            return cls([KFoldColoring.from_dict(c) for c in data["colorings"]], int(data["k"]))
        except (KeyError, TypeError) as exc:
            raise InvalidInputError(f"bad collection JSON: {exc}") from exc


def covered_edges(col: ColoringCollection, inst: PicodInstance) -> list[bool]:
    """Per receiver: is its edge conflict-free under some member?"""
    masks = [c.masks() for c in col]
    return [any(_edge_is_cf(mk, e) for mk in masks) for e in inst.edges]


def is_cf_collection(col: ColoringCollection, inst: PicodInstance) -> bool:
    for c in col:
        if c.m != inst.m:
            raise InvalidInputError(f"member covers {c.m} vertices, instance has {inst.m}")
    return all(covered_edges(col, inst))


def binary_collection(m: int) -> ColoringCollection:
    """``ceil(log2 m)`` two-colorings; coloring ``p`` uses bit ``p`` of the vertex label."""
    if m < 2:
        raise InvalidInputError(f"need m >= 2, got {m}")
    P = math.ceil(math.log2(m))
    return ColoringCollection(
        [KFoldColoring.scalar([(j >> p) & 1 for j in range(m)], L=2) for p in range(P)]
    )


def min_cover_dp(n_edges: int, options):
    """Cheapest multiset of ``(edge_mask, cost, payload)`` options covering all edges.

    Returns ``(cost, [payload, ...])`` or None. Masks only grow under union,
    so sweeping states in increasing numeric order settles each before use.
    """
    full = (1 << n_edges) - 1
    best: dict[int, tuple[int, object]] = {}
    for mask, cost, payload in options:
        if mask and (mask not in best or cost < best[mask][0]):
            best[mask] = (cost, payload)
    opts = [(mk, c, p) for mk, (c, p) in best.items()]
    # drop options dominated by a superset that is no more expensive
    opts.sort(key=lambda t: (t[1], -bin(t[0]).count("1")))
    kept = []
    for mk, c, p in opts:
        if not any((mk & ~m2) == 0 and c2 <= c for m2, c2, _ in kept):
            kept.append((mk, c, p))
    INF = math.inf
    dist = [INF] * (full + 1)
    back: list[tuple[int, int] | None] = [None] * (full + 1)
    dist[0] = 0
    for s in range(full + 1):
        ds = dist[s]
        if ds == INF:
            continue
        for t, (mk, c, _) in enumerate(kept):
            ns = s | mk
            if ns != s and ds + c < dist[ns]:
                dist[ns] = ds + c
                back[ns] = (s, t)
    if dist[full] == INF:
        return None
    chosen = []
    s = full
    while s:
        prev, t = back[s]
        chosen.append(kept[t][2])
        s = prev
    return dist[full], chosen[::-1]


def exact_alpha_cf(inst: PicodInstance, k: int = 1, budget: int | None = None):
    """Exact k-fold conflict-free covering number with a witness collection.

    Every palette size up to ``budget`` (default ``m*k``, enough because a
    conflict-free coloring with at most that many colors always exists) is
    enumerated once; the cheapest covering multiset is found by DP over
    edge subsets.
    """
    if budget is None:
        budget = inst.m * k
    edges = inst.unique_edges()
    if not edges:
        return 0, ColoringCollection([], k)
    options = []
    for L in range(k, budget + 1):
        seen = set()
        for masks in enumerate_colorings(inst.m, k, L):
            cov = cf_edge_mask(masks, edges)
            if cov and cov not in seen:
                seen.add(cov)
                options.append((cov, L, (L, masks)))
    res = min_cover_dp(len(edges), options)
    if res is None:
        raise BudgetExceeded(f"no conflict-free collection within {budget} total colors", budget)
    cost, picks = res
    if cost > budget:
        raise BudgetExceeded(f"covering number exceeds budget {budget}", budget)
    col = ColoringCollection([KFoldColoring.from_masks(k, L, mk) for L, mk in picks], k)
    return cost, col


def random_round_coloring(vertices: int, q: float, seed=None) -> KFoldColoring:
    """Two-coloring: each vertex independently gets color 0 with probability ``q``."""
    if not 0 < q < 1:
        raise InvalidInputError(f"q must lie strictly between 0 and 1, got {q}")
    rng = np.random.default_rng(seed)
    first = rng.random(vertices) < q
    return KFoldColoring.scalar(np.where(first, 0, 1), L=2)


@dataclass(frozen=True)
class BucketDecomposition:
    gamma: int
    kappa: float
    large: tuple[int, ...]
    buckets: tuple[tuple[float, tuple[int, ...]], ...]


def bucket_decomposition(inst: PicodInstance, gamma_value: int | None = None) -> BucketDecomposition:
    """Split edge indices into ``|E| >= kappa`` and size buckets ``k_i/2 <= |E| < k_i``.

    The last bucket also takes any edge smaller than its lower threshold, so
    the parts always cover every edge.
    """
    g = gamma(inst).gamma if gamma_value is None else gamma_value
    kap = kappa_of(g)
    if kap is None:
        raise InvalidInputError(
            f"Gamma={g} <= e: bucket construction does not apply; use direct coloring"
        )
    thr = bucket_thresholds(kap)
    large = []
    parts: list[list[int]] = [[] for _ in thr]
    for r, e in enumerate(inst.edges):
        s = len(e)
        if s >= kap:
            large.append(r)
            continue
        for i, ki in enumerate(thr):
            if ki / 2 <= s < ki or (i == len(thr) - 1 and s < ki):
                parts[i].append(r)
                break
    return BucketDecomposition(
        g, kap, tuple(large), tuple((ki, tuple(p)) for ki, p in zip(thr, parts))
    )


def _default_cap(n_edges: int, g: float) -> int:
    return 10 * max(n_edges, 1) * math.ceil(math.log(max(g, 1.0)) + 1)


def bucket_cover(
    edges: Sequence[Sequence[int]],
    vertices: int,
    k_i: float,
    gamma_value: float,
    seed=None,
    cap: int | None = None,
):
    """``ceil(5 k_i ln Gamma)`` random two-color rounds covering every edge.

    Each vertex takes color 0 with probability ``1/k_i`` in each round. While
    some edge is conflict-free in no round, all rounds are redrawn on that
    edge's vertices. Returns ``(collection, resample_count)``.
    """
    if gamma_value <= math.e:
        raise InvalidInputError(f"need Gamma > e, got {gamma_value}")
    edges = [tuple(e) for e in edges]
    if not edges:
        return ColoringCollection([]), 0
    if cap is None:
        cap = _default_cap(len(edges), gamma_value)
    t = math.ceil(5 * k_i * math.log(gamma_value))
    q = min(1.0, 1.0 / k_i)
    rng = np.random.default_rng(seed)
    first = rng.random((t, vertices)) < q
    pending = [e for e in edges if len(e) > 1]
    idx = [np.array(e) for e in pending]

    def covered(j: int) -> bool:
        sub = first[:, idx[j]]
        ones = sub.sum(axis=1)
        s = sub.shape[1]
        # conflict-free for a two-coloring <=> one of the classes is a singleton
        return bool(np.any((ones == 1) | (ones == s - 1)))

    events = 0
    while True:
        bad = next((j for j in range(len(pending)) if not covered(j)), None)
        if bad is None:
            break
        if events >= cap:
            raise ResampleCapExceeded(
                f"bucket cover still violated after {events} resamples", events
            )
        events += 1
        first[:, idx[bad]] = rng.random((t, len(idx[bad]))) < q
    cols = [KFoldColoring.scalar(np.where(row, 0, 1), L=2) for row in first]
    return ColoringCollection(cols), events


def large_edge_budget(g: float, c0: float = 4.0) -> tuple[int, int]:
    """``(t, ceil(c0 * t * g**(1/t) * ln g))`` with ``t = max(1, ceil(ln g))``."""
    t = max(1, math.ceil(math.log(g)))
    return t, math.ceil(c0 * t * g ** (1.0 / t) * math.log(g))


def random_cf_coloring(
    edges: Sequence[Sequence[int]],
    vertices: int,
    L: int,
    seed=None,
    cap: int | None = None,
    gamma_value: float = math.e,
):
    """Uniform random ``L``-coloring repaired by resampling violated edges.

    Vertices outside every edge get color 0. Returns ``(coloring, resamples)``.
    """
    rng = np.random.default_rng(seed)
    edges = [tuple(e) for e in edges if len(e) > 1]
    if cap is None:
        cap = _default_cap(len(edges), gamma_value)
    color = np.zeros(vertices, dtype=np.int64)
    touched = sorted({v for e in edges for v in e})
    if touched:
        color[touched] = rng.integers(0, L, size=len(touched))
    idx = [np.array(e) for e in edges]

    def ok(j: int) -> bool:
        _, counts = np.unique(color[idx[j]], return_counts=True)
        return bool(np.any(counts == 1))

    events = 0
    while True:
        bad = next((j for j in range(len(edges)) if not ok(j)), None)
        if bad is None:
            break
        if events >= cap:
            raise ResampleCapExceeded(f"coloring still violated after {events} resamples", events)
        events += 1
        color[idx[bad]] = rng.integers(0, L, size=len(idx[bad]))
    return KFoldColoring.scalar(color, L=max(L, 1)), events


def prune_collection(col: ColoringCollection, inst: PicodInstance) -> ColoringCollection:
    """Drop members not needed for coverage, most expensive first."""
    masks = [c.masks() for c in col]
    cover = [cf_edge_mask(mk, inst.edges) for mk in masks]
    keep = list(range(len(col)))
    for p in sorted(keep, key=lambda p: (-col.colorings[p].L, -p)):
        rest = 0
        for s in keep:
            if s != p:
                rest |= cover[s]
        full = (1 << inst.n) - 1
        if rest == full:
            keep.remove(p)
    return ColoringCollection([col.colorings[p] for p in keep], col.k)


@dataclass(frozen=True)
class Log2Build:
    collection: ColoringCollection
    gamma: int
    attempts: int
    fallback: bool
    unpruned_colors: int

    @property
    def total_colors(self) -> int:
        return self.collection.total_colors


def build_log2_collection(
    inst: PicodInstance,
    seed=None,
    c0: float = 4.0,
    cap: int | None = None,
    prune: bool = True,
) -> Log2Build:
    """Verified conflict-free collection following the ``O(log^2 Gamma)`` construction.

    Large edges (``|E| >= kappa``) get one random coloring whose palette
    doubles from 2 up to the ``c0 * t * Gamma**(1/t) * ln Gamma`` budget until
    resampling succeeds; each size bucket gets its randomized two-color
    rounds. With ``prune`` the result drops members that cover nothing new.
    When ``Gamma <= e`` the greedy coloring is returned as a single member.
    """
    rng = np.random.default_rng(seed)
    g = gamma(inst).gamma
    if kappa_of(g) is None:
        col = ColoringCollection([greedy_cf_coloring(inst, seed=int(rng.integers(2**31)))])
        if not is_cf_collection(col, inst):  # pragma: no cover
            raise AssertionError("greedy fallback produced an invalid collection")
        return Log2Build(col, g, 0, True, col.total_colors)
    parts = bucket_decomposition(inst, g)
    members: list[KFoldColoring] = []
    attempts = 0
    if parts.large:
        large_edges = [inst.edges[r] for r in parts.large]
        _, budget = large_edge_budget(g, c0)
        L = 2
        while True:
            L = min(L, budget)
            sub_cap = cap if L == budget else max(len(large_edges), 1) * 4
            try:
                c, ev = random_cf_coloring(
                    large_edges, inst.m, L, seed=int(rng.integers(2**63)),
                    cap=sub_cap, gamma_value=g,
                )
                attempts += ev
                break
            except ResampleCapExceeded as exc:
                attempts += exc.attempts
                if L == budget:
                    raise ResampleCapExceeded(str(exc), attempts) from exc
                L *= 2
        members.append(c.compact())
    for ki, rs in parts.buckets:
        if not rs:
            continue
        sub, ev = bucket_cover(
            [inst.edges[r] for r in rs], inst.m, ki, g,
            seed=int(rng.integers(2**63)), cap=cap,
        )
        attempts += ev
        members.extend(sub.colorings)
    col = ColoringCollection(members)
    unpruned = col.total_colors
    if prune:
        col = prune_collection(col, inst)
    if not is_cf_collection(col, inst):  # pragma: no cover
        raise AssertionError("randomized construction failed verification")
    return Log2Build(col, g, attempts, False, unpruned)
