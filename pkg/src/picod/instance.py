"""PICOD instances as hypergraphs: messages are vertices, request-sets are edges."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import InvalidInputError


@dataclass(frozen=True)
class PicodInstance:
    """Hypergraph on vertices ``0..m-1`` with one edge per receiver.

    Edges are stored as sorted tuples without repeated vertices. The same
    request-set may appear for several receivers.
    """

    m: int
    edges: tuple[tuple[int, ...], ...]

    def __init__(self, m: int, edges: Sequence[Sequence[int]]):
        if not isinstance(m, (int, np.integer)) or m < 1:
            raise InvalidInputError(f"m must be a positive integer, got {m!r}")
        canon = []
        for r, edge in enumerate(edges):
            verts = tuple(sorted({int(v) for v in edge}))
            if not verts:
                raise InvalidInputError(f"empty edge at index {r}")
            if verts[0] < 0 or verts[-1] >= m:
                raise InvalidInputError(
                    f"label out of range in edge at index {r}: {list(edge)} (m={m})"
                )
            canon.append(verts)
        object.__setattr__(self, "m", int(m))
        object.__setattr__(self, "edges", tuple(canon))

    @property
    def n(self) -> int:
        return len(self.edges)

    def side_information(self, r: int) -> tuple[int, ...]:
        """Messages already held by receiver ``r``."""
        req = set(self.edges[r])
        return tuple(v for v in range(self.m) if v not in req)

    def unique_edges(self) -> tuple[tuple[int, ...], ...]:
        """Distinct request-sets in first-occurrence order."""
        return tuple(dict.fromkeys(self.edges))

    def restrict(self, edge_indices: Sequence[int]) -> "PicodInstance":
        return PicodInstance(self.m, [self.edges[r] for r in edge_indices])

    def to_dict(self) -> dict:
        return {"m": self.m, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_dict(cls, data: dict) -> "PicodInstance":
        if not isinstance(data, dict) or "m" not in data or "edges" not in data:
            raise InvalidInputError("instance JSON needs keys 'm' and 'edges'")
        edges = data["edges"]
        if not isinstance(edges, list):
            raise InvalidInputError("'edges' must be a list")
        for r, e in enumerate(edges):
            if not isinstance(e, list) or not all(
                isinstance(v, int) and not isinstance(v, bool) for v in e
            ):
                raise InvalidInputError(f"edge at index {r} must be a list of integers")
        return cls(data["m"], edges)


@dataclass(frozen=True)
class IntersectionProfile:
    gamma: int
    per_edge_degree: tuple[int, ...]
    min_edge_size: int
    max_edge_size: int
    kappa: float | None = None
    thresholds: tuple[float, ...] = field(default_factory=tuple)

    @property
    def has_kappa(self) -> bool:
        return self.kappa is not None


def kappa_of(gamma: float) -> float | None:
    """``2 ln(gamma) - 1``, defined only for gamma > e."""
    if gamma <= math.e:
        return None
    return 2.0 * math.log(gamma) - 1.0


def bucket_thresholds(kappa: float) -> tuple[float, ...]:
    """``kappa / 2**i`` for ``i = 0..ceil(ln kappa)``."""
    P = math.ceil(math.log(kappa))
    return tuple(kappa / 2**i for i in range(P + 1))


def gamma(inst: PicodInstance) -> IntersectionProfile:
    """Exact intersection profile by pairwise comparison of edges.

    Duplicate request-sets count once per receiver.
    """
    n = inst.n
    if n == 0:
        return IntersectionProfile(0, (), 0, 0)
    inc = np.zeros((n, inst.m), dtype=np.int64)
    for r, e in enumerate(inst.edges):
        inc[r, list(e)] = 1
    meets = (inc @ inc.T) > 0
    np.fill_diagonal(meets, False)
    deg = tuple(int(d) for d in meets.sum(axis=1))
    g = max(deg)
    sizes = [len(e) for e in inst.edges]
    kap = kappa_of(g)
    thr = bucket_thresholds(kap) if kap is not None else ()
    return IntersectionProfile(g, deg, min(sizes), max(sizes), kap, thr)


def complete_two_uniform(m: int) -> PicodInstance:
    if m < 2:
        raise InvalidInputError(f"complete 2-uniform instance needs m >= 2, got {m}")
    return PicodInstance(m, list(combinations(range(m), 2)))


def random_instance(m: int, n: int, size_range: tuple[int, int], seed=None) -> PicodInstance:
    """``n`` uniform random edges, each size drawn uniformly from ``size_range``."""
    lo, hi = size_range
    if not (1 <= lo <= hi <= m):
        raise InvalidInputError(f"infeasible size range {size_range} for m={m}")
    if n < 0:
        raise InvalidInputError(f"n must be non-negative, got {n}")
    rng = np.random.default_rng(seed)
    edges = []
    for _ in range(n):
        s = int(rng.integers(lo, hi + 1))
        edges.append(sorted(int(v) for v in rng.choice(m, size=s, replace=False)))
    return PicodInstance(m, edges)


def load(path) -> PicodInstance:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"malformed JSON in {path}: {exc}") from exc
    return PicodInstance.from_dict(data)


def save(inst: PicodInstance, path) -> None:
    Path(path).write_text(json.dumps(inst.to_dict()) + "\n")


# Named instances; vertex labels shifted to start at 0.

def pentagon() -> PicodInstance:
    # a..e -> 0..4
    return PicodInstance(5, [(0, 2), (1, 4), (1, 3), (2, 4), (0, 3)])


def example2() -> PicodInstance:
    one_based = [
        (1, 2, 4, 6), (1, 2, 3, 5), (2, 3, 4, 7), (1, 3, 4, 8),
        (2, 5, 6, 7), (1, 5, 6, 8), (3, 5, 7, 8), (4, 6, 7, 8),
    ]
    return PicodInstance(8, [[v - 1 for v in e] for e in one_based])


def example3() -> PicodInstance:
    return complete_two_uniform(10)


NAMED = {"pentagon": pentagon, "ex2": example2, "ex3": example3}


def bounded_gamma_instance(
    m: int,
    target_gamma: int,
    size_range: tuple[int, int] = (2, 8),
    seed=None,
    n_max: int | None = None,
    max_rejects: int = 200,
) -> PicodInstance:
    """Random edges added one at a time, skipping any that would push Gamma past the target.

    Stops at ``n_max`` edges (default ``4 * target_gamma``) or after
    ``max_rejects`` consecutive skips.
    """
    lo, hi = size_range
    if not (1 <= lo <= hi <= m):
        raise InvalidInputError(f"infeasible size range {size_range} for m={m}")
    if target_gamma < 0:
        raise InvalidInputError("target_gamma must be non-negative")
    if n_max is None:
        n_max = 4 * max(target_gamma, 1)
    rng = np.random.default_rng(seed)
    edges: list[tuple[int, ...]] = []
    at_vertex: list[list[int]] = [[] for _ in range(m)]
    degree: list[int] = []
    rejects = 0
    while len(edges) < n_max and rejects < max_rejects:
        s = int(rng.integers(lo, hi + 1))
        e = tuple(sorted(int(v) for v in rng.choice(m, size=s, replace=False)))
        nbrs = {r for v in e for r in at_vertex[v]}
        if len(nbrs) > target_gamma or any(degree[r] >= target_gamma for r in nbrs):
            rejects += 1
            continue
        rejects = 0
        r = len(edges)
        edges.append(e)
        degree.append(len(nbrs))
        for x in nbrs:
            degree[x] += 1
        for v in e:
            at_vertex[v].append(r)
    return PicodInstance(m, edges)
