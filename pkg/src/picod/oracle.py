"""Brute-force ground truth for tiny instances.

The optimal linear length is found by depth-first search over encoder
columns, with decodability checked by enumerating spans outright. Nothing
here reuses the encoder constructions; only ``validate_encoder`` is called,
as a final consistency check on the witness.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from functools import lru_cache
from itertools import product
from typing import Sequence

import numpy as np

from .coloring import exact_chi_cf
from .collection import exact_alpha_cf
from .encoder import FieldMatrix, validate_encoder
from .errors import BudgetExceeded, InvalidInputError
from .field import check_prime
from .instance import PicodInstance
from .localcf import exact_delta_k, exact_lambda_k


@lru_cache(maxsize=None)
def span(vectors: tuple[tuple[int, ...], ...], q: int, length: int) -> frozenset:
    """Every GF(q) combination of ``vectors``."""
    out = {(0,) * length}
    for v in vectors:
        out = {tuple((a + t * b) % q for a, b in zip(u, v)) for u in out for t in range(q)}
    return frozenset(out)


def property_p_brute(blocks: dict[int, tuple], edge: Sequence[int], q: int, k: int, length: int):
    """First ``d`` in ``edge`` passing property (P) by explicit span enumeration, else None."""
    zero = (0,) * length
    for d in edge:
        own = span(blocks[d], q, length)
        if len(own) != q**k:
            continue
        others = tuple(v for i in edge if i != d for v in blocks[i])
        if own & span(others, q, length) == {zero}:
            return d
    return None


def brute_force_length(inst: PicodInstance, q: int = 2, k: int = 1, L_max: int | None = None):
    """Smallest ``l`` with a valid linear ``k``-vector encoder over GF(q).

    Returns ``(l, G)``; raises ``BudgetExceeded`` past ``L_max`` (default
    ``k * min(m, n)``).
    """
    check_prime(q)
    if k < 1:
        raise InvalidInputError(f"k must be >= 1, got {k}")
    edges = inst.unique_edges()
    if not edges:
        return 0, FieldMatrix(q, k, np.zeros((0, inst.m * k), dtype=np.int64))
    if L_max is None:
        L_max = k * min(inst.m, inst.n)
    active = sorted({v for e in edges for v in e})
    closing: dict[int, list] = {v: [] for v in active}
    for e in edges:
        closing[max(e)].append(e)
    for L in range(1, L_max + 1):
        vecs = list(product(range(q), repeat=L))
        choices = list(product(vecs, repeat=k))
        blocks: dict[int, tuple] = {v: ((0,) * L,) * k for v in range(inst.m)}

        def rec(t: int) -> bool:
            if t == len(active):
                return True
            v = active[t]
            for ch in choices:
                blocks[v] = ch
                if all(property_p_brute(blocks, e, q, k, L) is not None for e in closing[v]):
                    if rec(t + 1):
                        return True
            blocks[v] = ((0,) * L,) * k
            return False

        if rec(0):
            G = np.zeros((L, inst.m * k), dtype=np.int64)
            for v in range(inst.m):
                for j, col in enumerate(blocks[v]):
                    G[:, v * k + j] = col
            W = FieldMatrix(q, k, G)
            if not validate_encoder(W, inst).ok:  # pragma: no cover
                raise AssertionError("brute-force witness failed independent validation")
            return L, W
    raise BudgetExceeded(f"no valid encoder of length <= {L_max}", L_max)


@dataclass
class ChainReport:
    l_star: int | None = None
    chi: int | None = None
    alpha: int | None = None
    delta: int | None = None
    lambda_: int | None = None
    chain_ok: bool = False
    complete: bool = False
    violations: list = None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["lambda"] = d.pop("lambda_")
        return d


def certify_chain(inst: PicodInstance, k: int = 1, budgets: dict | None = None, q: int = 2) -> ChainReport:
    """Compute every parameter exactly and check ``l* <= lambda = Delta <= alpha <= chi``.

    ``budgets`` may bound ``chi``/``alpha``/``delta``/``lambda`` palettes and
    ``l_star``. If any search runs out of budget the report is partial and
    the chain is not asserted.
    """
    budgets = dict(budgets or {})
    rep = ChainReport(violations=[])
    try:
        rep.chi = exact_chi_cf(inst, k, budgets.get("chi"))[0]
        rep.alpha = exact_alpha_cf(inst, k, budgets.get("alpha"))[0]
        rep.delta = exact_delta_k(inst, k, budgets.get("delta"))[0]
        rep.lambda_ = exact_lambda_k(inst, k, budgets.get("lambda"))[0]
        rep.l_star = brute_force_length(inst, q, k, budgets.get("l_star"))[0]
    except BudgetExceeded:
        return rep
    rep.complete = True
    checks = [
        ("l_star <= lambda", rep.l_star <= rep.lambda_),
        ("lambda == delta", rep.lambda_ == rep.delta),
        ("delta <= alpha", rep.delta <= rep.alpha),
        ("alpha <= chi", rep.alpha <= rep.chi),
    ]
    rep.violations = [name for name, ok in checks if not ok]
    rep.chain_ok = not rep.violations
    return rep
