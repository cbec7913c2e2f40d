"""Scaling runs of the randomized collection construction against Gamma."""

from __future__ import annotations

import csv
import io
import statistics
from dataclasses import dataclass

from .collection import build_log2_collection, is_cf_collection
from .instance import bounded_gamma_instance, gamma

CSV_HEADER = ("gamma", "total_colors", "seed", "attempts", "strategy")


@dataclass(frozen=True)
class BenchRow:
    gamma: int
    total_colors: int
    seed: int
    attempts: int
    strategy: str
    target: int
    verified: bool = True


def run_bench(
    gammas=(8, 32, 128, 512),
    seeds=range(10),
    m: int = 48,
    size_range=(2, 8),
    c0: float = 4.0,
    prune: bool = True,
) -> list[BenchRow]:
    """One bounded-Gamma instance and one construction per (target Gamma, seed)."""
    strategy = "log2-collection" if prune else "log2-collection-raw"
    rows = []
    for g in gammas:
        for s in seeds:
            inst = bounded_gamma_instance(m, g, size_range, seed=(g, s))
            b = build_log2_collection(inst, seed=(g, s, 1), c0=c0, prune=prune)
            ok = is_cf_collection(b.collection, inst)
            rows.append(BenchRow(gamma(inst).gamma, b.total_colors, s, b.attempts, strategy, g, ok))
    return rows


def medians_by_target(rows: list[BenchRow]) -> dict[int, float]:
    groups: dict[int, list[int]] = {}
    for r in rows:
        groups.setdefault(r.target, []).append(r.total_colors)
    return {g: statistics.median(v) for g, v in sorted(groups.items())}


def to_csv(rows: list[BenchRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow([r.gamma, r.total_colors, r.seed, r.attempts, r.strategy])
    return buf.getvalue()
