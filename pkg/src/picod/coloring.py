"""k-fold colorings, conflict-free tests, and chromatic-number search."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import BudgetExceeded, InvalidInputError
from .instance import PicodInstance


@dataclass(frozen=True)
class KFoldColoring:
    """Each vertex gets a set of exactly ``k`` distinct colors from ``0..L-1``."""

    k: int
    L: int
    assign: tuple[tuple[int, ...], ...]

    def __init__(self, k: int, L: int, assign: Sequence[Iterable[int]]):
        if k < 1 or L < k:
            raise InvalidInputError(f"need 1 <= k <= L, got k={k}, L={L}")
        canon = []
        for v, colors in enumerate(assign):
            cs = tuple(sorted({int(c) for c in colors}))
            if len(cs) != k:
                raise InvalidInputError(f"vertex {v} has {len(cs)} colors, expected {k}")
            if cs[0] < 0 or cs[-1] >= L:
                raise InvalidInputError(f"vertex {v} uses a color outside 0..{L - 1}")
            canon.append(cs)
        object.__setattr__(self, "k", int(k))
        object.__setattr__(self, "L", int(L))
        object.__setattr__(self, "assign", tuple(canon))

    @property
    def m(self) -> int:
        return len(self.assign)

    def masks(self) -> tuple[int, ...]:
        """Color sets as integer bitmasks."""
        return tuple(_to_mask(cs) for cs in self.assign)

    @classmethod
    def from_masks(cls, k: int, L: int, masks: Sequence[int]) -> "KFoldColoring":
        return cls(k, L, [_from_mask(x) for x in masks])

    @classmethod
    def scalar(cls, colors: Sequence[int], L: int | None = None) -> "KFoldColoring":
        """1-fold coloring from a plain color list."""
        colors = [int(c) for c in colors]
        if L is None:
            L = max(colors) + 1 if colors else 1
        return cls(1, L, [(c,) for c in colors])

    def compact(self) -> "KFoldColoring":
        """Relabel so only used colors remain, in first-use order."""
        relabel: dict[int, int] = {}
        for cs in self.assign:
            for c in cs:
                relabel.setdefault(c, len(relabel))
        L = max(len(relabel), self.k)
        return KFoldColoring(self.k, L, [[relabel[c] for c in cs] for cs in self.assign])

    def compact_with(self, D: Iterable[int]):
        """``compact()`` plus the image of the color set ``D``."""
        relabel: dict[int, int] = {}
        for cs in self.assign:
            for c in cs:
                relabel.setdefault(c, len(relabel))
        out = self.compact()
        return out, tuple(sorted(relabel[x] for x in D if x in relabel))

    def to_dict(self) -> dict:
        return {"k": self.k, "L": self.L, "assign": [list(cs) for cs in self.assign]}

    @classmethod
    def from_dict(cls, data: dict) -> "KFoldColoring":
        try:
            return cls(int(data["k"]), int(data["L"]), data["assign"])
        except (KeyError, TypeError) as exc:
            raise InvalidInputError(f"bad coloring JSON: {exc}") from exc


def _to_mask(colors: Iterable[int]) -> int:
    x = 0
    for c in colors:
        x |= 1 << c
    return x


def _from_mask(x: int) -> tuple[int, ...]:
    out = []
    c = 0
    while x:
        if x & 1:
            out.append(c)
        x >>= 1
        c += 1
    return tuple(out)


def cf_witnesses(masks: Sequence[int], edge: Sequence[int]) -> list[int]:
    """Vertices of ``edge`` whose color set is disjoint from every other vertex's."""
    if len(edge) == 1:
        return [edge[0]]
    out = []
    for i, v in enumerate(edge):
        others = 0
        for j, u in enumerate(edge):
            if j != i:
                others |= masks[u]
        if masks[v] & others == 0:
            out.append(v)
    return out


def _edge_is_cf(masks: Sequence[int], edge: Sequence[int]) -> bool:
    if len(edge) == 1:
        return True
    seen = 0
    twice = 0
    for v in edge:
        twice |= seen & masks[v]
        seen |= masks[v]
    return any(masks[v] & twice == 0 for v in edge)


def is_cf_for_edge(c: KFoldColoring, edge: Sequence[int]) -> bool:
    edge = list(edge)
    if any(v < 0 or v >= c.m for v in edge):
        raise InvalidInputError("edge vertex outside the coloring's domain")
    return _edge_is_cf(c.masks(), edge)


def _check_domain(c: KFoldColoring, inst: PicodInstance) -> None:
    if c.m != inst.m:
        raise InvalidInputError(f"coloring covers {c.m} vertices, instance has {inst.m}")


def is_cf(c: KFoldColoring, inst: PicodInstance) -> bool:
    _check_domain(c, inst)
    masks = c.masks()
    return all(_edge_is_cf(masks, e) for e in inst.edges)


def cf_edge_mask(masks: Sequence[int], edges: Sequence[Sequence[int]]) -> int:
    """Bitmask over ``edges`` of those the coloring makes conflict-free."""
    out = 0
    for r, e in enumerate(edges):
        if _edge_is_cf(masks, e):
            out |= 1 << r
    return out


def enumerate_colorings(
    m: int,
    k: int,
    L: int,
    edges: Sequence[Sequence[int]] = (),
) -> Iterator[tuple[int, ...]]:
    """Yield k-fold colorings of ``m`` vertices with palette ``L`` as mask tuples.

    Colors are interchangeable, so fresh colors are always introduced as the
    lowest unused indices; every coloring is equivalent to at least one
    yielded one. When ``edges`` is given, only colorings that are
    conflict-free on all of them are yielded, and branches are cut as soon
    as an edge is fully colored and fails.
    """
    closing: list[list[tuple[int, ...]]] = [[] for _ in range(m)]
    for e in edges:
        if len(e) > 1:
            closing[max(e)].append(tuple(e))
    masks = [0] * m

    # reused colors before fresh ones: yields the lexicographically first coloring first
    def choices(used: int):
        for fresh in range(min(k, L - used) + 1):
            old = k - fresh
            if old > used:
                continue
            fresh_bits = ((1 << fresh) - 1) << used
            for olds in combinations(range(used), old):
                yield _to_mask(olds) | fresh_bits, used + fresh

    def rec(v: int, used: int):
        if v == m:
            yield tuple(masks)
            return
        for mask, nused in choices(used):
            masks[v] = mask
            if all(_edge_is_cf(masks, e) for e in closing[v]):
                yield from rec(v + 1, nused)
        masks[v] = 0

    if m == 0:
        yield ()
        return
    yield from rec(0, 0)


def exact_chi_cf(inst: PicodInstance, k: int = 1, L_max: int | None = None):
    """Smallest palette admitting a k-fold conflict-free coloring, with a witness.

    Raises ``BudgetExceeded`` if none exists with at most ``L_max`` colors.
    """
    if k < 1:
        raise InvalidInputError(f"k must be >= 1, got {k}")
    if L_max is None:
        L_max = inst.m * k
    edges = inst.unique_edges()
    for L in range(k, L_max + 1):
        for masks in enumerate_colorings(inst.m, k, L, edges):
            return L, KFoldColoring.from_masks(k, L, masks)
    raise BudgetExceeded(f"no {k}-fold conflict-free coloring with <= {L_max} colors", L_max)


def _incidence_order(inst: PicodInstance) -> list[int]:
    deg = [0] * inst.m
    for e in inst.edges:
        for v in e:
            deg[v] += 1
    return sorted(range(inst.m), key=lambda v: (-deg[v], v))


def greedy_cf_coloring(inst: PicodInstance, seed=None) -> KFoldColoring:
    """Heuristic 1-fold conflict-free coloring.

    Vertices are taken in decreasing incidence order and each gets the color
    (existing or one new) maximizing the number of its edges that are
    conflict-free on their colored part; ties go to the smallest color. Any
    edge still failing afterwards has one vertex moved to a fresh color,
    which never breaks another edge. ``seed`` only permutes ties among
    equal-incidence vertices.
    """
    order = _incidence_order(inst)
    if seed is not None:
        deg = [0] * inst.m
        for e in inst.edges:
            for v in e:
                deg[v] += 1
        jitter = np.random.default_rng(seed).random(inst.m)
        order = sorted(range(inst.m), key=lambda v: (-deg[v], jitter[v]))
    incident: list[list[tuple[int, ...]]] = [[] for _ in range(inst.m)]
    for e in inst.unique_edges():
        for v in e:
            incident[v].append(e)
    color = [-1] * inst.m
    used = 0
    for v in order:
        best_c, best_score = 0, -1
        for c in range(used + 1):
            color[v] = c
            score = 0
            for e in incident[v]:
                part = [color[u] for u in e if color[u] >= 0]
                if any(part.count(x) == 1 for x in part):
                    score += 1
            if score > best_score:
                best_c, best_score = c, score
        color[v] = best_c
        used = max(used, best_c + 1)
    for e in inst.unique_edges():
        masks = [1 << c for c in color]
        if not _edge_is_cf(masks, e):
            color[e[0]] = used
            used += 1
    return KFoldColoring.scalar(color).compact()


def expand_to_kfold(c: KFoldColoring, k: int) -> KFoldColoring:
    """Replace color ``j`` by the block ``{kj, ..., kj+k-1}``."""
    if c.k != 1:
        raise InvalidInputError(f"expansion needs a 1-fold coloring, got k={c.k}")
    return KFoldColoring(k, k * c.L, [range(k * cs[0], k * cs[0] + k) for cs in c.assign])
