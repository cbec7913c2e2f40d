"""Essential color sets and the local conflict-free parameters.

An edge is satisfied by a color set ``D`` when some vertex of the edge has
all its colors inside ``D`` and shares no color with any other vertex of
the edge. ``D`` is essential when it satisfies every edge. The local
parameter of ``(C, D)`` is the largest number of ``D``-colors seen on one
satisfied edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .coloring import KFoldColoring, _to_mask, cf_witnesses, enumerate_colorings, is_cf
from .collection import ColoringCollection, min_cover_dp
from .errors import BudgetExceeded, InvalidInputError, PicodError
from .instance import PicodInstance

# above this many used colors, essential-set minimization switches to greedy
EXHAUSTIVE_COLORS = 16


@dataclass(frozen=True)
class EssentialSelection:
    """One color subset per member of a collection."""

    essential: tuple[tuple[int, ...], ...]

    def __init__(self, essential: Sequence[Sequence[int]]):
        object.__setattr__(
            self, "essential", tuple(tuple(sorted({int(c) for c in D})) for D in essential)
        )

    def to_dict(self) -> dict:
        return {"essential": [list(D) for D in self.essential]}

    @classmethod
    def from_dict(cls, data: dict) -> "EssentialSelection":
        try:
            return cls(data["essential"])
        except (KeyError, TypeError) as exc:
            raise InvalidInputError(f"bad selection JSON: {exc}") from exc


@dataclass(frozen=True)
class _EdgeTable:
    """Per distinct edge: witness color masks and the union of its colors."""

    edges: tuple[tuple[int, ...], ...]
    witness_masks: tuple[tuple[int, ...], ...]
    union: tuple[int, ...]

    @classmethod
    def build(cls, masks: Sequence[int], edges) -> "_EdgeTable":
        wm, un = [], []
        for e in edges:
            wm.append(tuple(masks[v] for v in cf_witnesses(masks, e)))
            u = 0
            for v in e:
                u |= masks[v]
            un.append(u)
        return cls(tuple(edges), tuple(wm), tuple(un))

    def satisfied(self, D: int) -> int:
        out = 0
        for r, ws in enumerate(self.witness_masks):
            if any(w & ~D == 0 for w in ws):
                out |= 1 << r
        return out

    def delta(self, D: int, sat: int) -> int:
        best = 0
        for r, u in enumerate(self.union):
            if sat >> r & 1:
                best = max(best, bin(u & D).count("1"))
        return best


def _check(c: KFoldColoring, inst: PicodInstance, D) -> int:
    if c.m != inst.m:
        raise InvalidInputError(f"coloring covers {c.m} vertices, instance has {inst.m}")
    D = list(D)
    if any(x < 0 or x >= c.L for x in D):
        raise InvalidInputError(f"color set {D} leaves palette 0..{c.L - 1}")
    return _to_mask(D)


def edges_satisfied(c: KFoldColoring, D: Sequence[int], inst: PicodInstance) -> set[int]:
    """Receiver indices whose edge has a witness colored entirely inside ``D``."""
    Dm = _check(c, inst, D)
    masks = c.masks()
    out = set()
    for r, e in enumerate(inst.edges):
        if any(masks[w] & ~Dm == 0 for w in cf_witnesses(masks, e)):
            out.add(r)
    return out


def is_essential(c: KFoldColoring, D: Sequence[int], inst: PicodInstance) -> bool:
    return len(edges_satisfied(c, D, inst)) == inst.n


def delta_of(c: KFoldColoring, D: Sequence[int], inst: PicodInstance) -> int:
    Dm = _check(c, inst, D)
    sat = edges_satisfied(c, D, inst)
    if not sat:
        raise InvalidInputError("no edge is satisfied by this color set; local parameter undefined")
    masks = c.masks()
    best = 0
    for r in sat:
        u = 0
        for v in inst.edges[r]:
            u |= masks[v]
        best = max(best, bin(u & Dm).count("1"))
    return best


@dataclass(frozen=True)
class DeltaResult:
    delta: int
    D: tuple[int, ...]
    heuristic: bool = False


def _used(masks: Sequence[int]) -> list[int]:
    u = 0
    for x in masks:
        u |= x
    return [c for c in range(u.bit_length()) if u >> c & 1]


def _min_essential(table: _EdgeTable, used: list[int], key):
    """Exhaustive minimum of ``key(D, delta)`` over essential subsets of ``used``."""
    full = (1 << len(table.edges)) - 1
    best = None
    for size in range(len(used) + 1):
        for pick in combinations(used, size):
            D = _to_mask(pick)
            if table.satisfied(D) != full:
                continue
            d = table.delta(D, full)
            cand = (key(pick, d), pick, d)
            if best is None or cand[0] < best[0]:
                best = cand
    return best


def _greedy_essential(table: _EdgeTable, used: list[int]):
    full = (1 << len(table.edges)) - 1
    D = list(used)
    while True:
        best = None
        for c in D:
            rest = [x for x in D if x != c]
            Dm = _to_mask(rest)
            if table.satisfied(Dm) != full:
                continue
            cand = (table.delta(Dm, full), c)
            if best is None or cand < best:
                best = cand
        if best is None:
            return tuple(D), table.delta(_to_mask(D), full)
        D.remove(best[1])


def min_delta_for_coloring(c: KFoldColoring, inst: PicodInstance) -> DeltaResult:
    """Smallest local parameter over essential color sets of a conflict-free coloring.

    Exhaustive up to ``EXHAUSTIVE_COLORS`` used colors, greedy shrinking
    beyond that (flagged ``heuristic``).
    """
    if not is_cf(c, inst):
        raise InvalidInputError("coloring is not conflict-free; no essential color set exists")
    masks = c.masks()
    table = _EdgeTable.build(masks, inst.unique_edges())
    used = _used(masks)
    if not inst.edges:
        return DeltaResult(0, ())
    if len(used) > EXHAUSTIVE_COLORS:
        D, d = _greedy_essential(table, used)
        return DeltaResult(d, D, heuristic=True)
    _, D, d = _min_essential(table, used, key=lambda pick, d: (d, len(pick)))
    return DeltaResult(d, tuple(D))


def min_essential_size(c: KFoldColoring, inst: PicodInstance) -> tuple[int, tuple[int, ...]]:
    """Fewest colors in any essential set of ``c``, with one such set."""
    if not is_cf(c, inst):
        raise InvalidInputError("coloring is not conflict-free")
    masks = c.masks()
    table = _EdgeTable.build(masks, inst.unique_edges())
    _, D, _ = _min_essential(table, _used(masks), key=lambda pick, d: len(pick))
    return len(D), tuple(D)


def exact_delta_k(inst: PicodInstance, k: int = 1, budget: int | None = None):
    """Local conflict-free chromatic number by exhaustive search.

    Returns ``(delta, coloring, D)``. The default palette budget ``m*k``
    covers every coloring up to relabeling, so the result is exact.
    """
    if budget is None:
        budget = inst.m * k
    edges = inst.unique_edges()
    if not edges:
        return 0, None, ()
    best = None
    for masks in enumerate_colorings(inst.m, k, budget, edges):
        table = _EdgeTable.build(masks, edges)
        used = _used(masks)
        _, D, d = _min_essential(table, used, key=lambda pick, d: (d, len(pick)))
        if best is None or d < best[0]:
            best = (d, masks, D)
            if d == k:  # a witness alone already carries k colors
                break
    if best is None:
        raise BudgetExceeded(f"no {k}-fold conflict-free coloring within {budget} colors", budget)
    d, masks, D = best
    c, D = KFoldColoring.from_masks(k, budget, masks).compact_with(D)
    return d, c, D


def exact_lambda_k(inst: PicodInstance, k: int = 1, budget: int | None = None):
    """Local conflict-free covering number by exhaustive search.

    Every coloring with palette up to ``budget`` paired with every color
    subset contributes the edges it satisfies at the cost of its local
    parameter; a DP over edge subsets picks the cheapest cover. Returns
    ``(lambda, collection, selection)``.
    """
    if budget is None:
        budget = inst.m * k
    edges = inst.unique_edges()
    if not edges:
        return 0, ColoringCollection([], k), EssentialSelection([])
    options = []
    for masks in enumerate_colorings(inst.m, k, budget):
        table = _EdgeTable.build(masks, edges)
        if not any(table.witness_masks):
            continue
        used = _used(masks)
        local: dict[int, tuple[int, tuple[int, ...]]] = {}
        for size in range(k, len(used) + 1):
            for pick in combinations(used, size):
                D = _to_mask(pick)
                sat = table.satisfied(D)
                if not sat:
                    continue
                d = table.delta(D, sat)
                if sat not in local or d < local[sat][0]:
                    local[sat] = (d, pick)
        for sat, (d, pick) in local.items():
            options.append((sat, d, (masks, pick)))
    res = min_cover_dp(len(edges), options)
    if res is None:
        raise BudgetExceeded(f"no essential coloring set cover within palette {budget}", budget)
    lam, picks = res
    cols, sel = [], []
    for masks, pick in picks:
        c, D = KFoldColoring.from_masks(k, budget, masks).compact_with(pick)
        cols.append(c)
        sel.append(D)
    return lam, ColoringCollection(cols, k), EssentialSelection(sel)


def merge_collection(col: ColoringCollection, sel: EssentialSelection, inst: PicodInstance):
    """Fold a collection with an essential coloring set cover into one coloring.

    Member ``p``'s selected colors are laid out after those of members
    ``0..p-1``; ``k`` fresh colors at the top of the palette form the
    fallback block. A vertex may take its colors from any member whose
    selected set contains them all, or the fallback block. Taking the first
    such member everywhere can collide (a member's witness may be claimed
    by an earlier member) and can push ``D``-colors of a member onto edges
    that member does not satisfy, so the choices are searched by
    backtracking, first member first, until the coloring is conflict-free
    with ``D``-colored witnesses and no edge sees more than
    ``sum_p delta_p`` colors of ``D``. Returns ``(coloring, D)`` with ``D``
    all non-fallback colors; raises ``PicodError`` when no choice works.
    """
    if len(sel.essential) != len(col):
        raise InvalidInputError("selection must have one color set per coloring")
    covered: set[int] = set()
    bound = 0
    for c, D in zip(col, sel.essential):
        sat = edges_satisfied(c, D, inst)
        covered |= sat
        if sat:
            bound += delta_of(c, D, inst)
    if len(covered) != inst.n:
        raise InvalidInputError("selection is not an essential coloring set cover")
    k = col.k
    offset = 0
    remap: list[dict[int, int]] = []
    for D in sel.essential:
        remap.append({color: offset + t for t, color in enumerate(D)})
        offset += len(D)
    block = _to_mask(range(offset, offset + k))
    options = []
    for v in range(inst.m):
        opts = []
        for c, rm in zip(col, remap):
            cs = c.assign[v]
            if all(x in rm for x in cs):
                mk = _to_mask(rm[x] for x in cs)
                if mk not in opts:
                    opts.append(mk)
        options.append(opts + [block])
    edges = inst.unique_edges()
    closing: list[list[tuple[int, ...]]] = [[] for _ in range(inst.m)]
    for e in edges:
        closing[max(e)].append(e)

    def good(masks, e):
        seen = 0
        for v in e:
            seen |= masks[v]
        if bin(seen & ~block).count("1") > bound:
            return False
        return any(masks[w] != block for w in cf_witnesses(masks, e))

    masks = [0] * inst.m

    def rec(v):
        if v == inst.m:
            return True
        for mk in options[v]:
            masks[v] = mk
            if all(good(masks, e) for e in closing[v]) and rec(v + 1):
                return True
        return False

    if not rec(0):
        raise PicodError("no conflict-free merge exists for this selection")
    return KFoldColoring.from_masks(k, offset + k, masks), tuple(range(offset))


def remap_outside_essential(c: KFoldColoring, D: Sequence[int], inst: PicodInstance) -> KFoldColoring:
    """Recolor so that only ``|D| + k`` colors remain, keeping conflict-freeness.

    Colors of ``D`` become ``0..|D|-1``. A vertex with ``j`` colors outside
    ``D`` swaps them for the first ``j`` of at most ``k`` fresh colors.
    """
    if not is_essential(c, D, inst):
        raise InvalidInputError("color set is not essential")
    D = sorted(set(D))
    pos = {x: t for t, x in enumerate(D)}
    extra = max((sum(1 for x in cs if x not in pos) for cs in c.assign), default=0)
    assign = []
    for cs in c.assign:
        inside = [pos[x] for x in cs if x in pos]
        outside = len(cs) - len(inside)
        assign.append(inside + list(range(len(D), len(D) + outside)))
    return KFoldColoring(c.k, max(len(D) + extra, c.k), assign)
