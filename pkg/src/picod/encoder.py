"""Linear PIC encoders over GF(q): construction, validation, encoding, decoding.

A ``k``-vector encoder is an ``l x mk`` matrix ``G``. Column ``i*k + j``
carries slot ``j`` of message ``i``; messages are flattened the same way.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import field as gf
from .coloring import KFoldColoring
from .errors import InvalidInputError
from .instance import PicodInstance
from .localcf import delta_of, edges_satisfied, is_essential


@dataclass(frozen=True, eq=False)
class FieldMatrix:
    q: int
    k: int
    entries: np.ndarray

    def __post_init__(self):
        gf.check_prime(self.q)
        a = np.array(self.entries, dtype=np.int64)
        if a.ndim == 1 and a.size == 0:
            a = a.reshape(0, 0)
        if a.ndim != 2:
            raise InvalidInputError("matrix entries must be 2-D")
        if a.shape[1] % self.k:
            raise InvalidInputError(f"{a.shape[1]} columns is not a multiple of k={self.k}")
        if a.size and (a.min() < 0 or a.max() >= self.q):
            raise InvalidInputError(f"entries must lie in [0, {self.q})")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def m(self) -> int:
        return self.entries.shape[1] // self.k

    def column(self, i: int, j: int) -> np.ndarray:
        return self.entries[:, i * self.k + j]

    def block(self, vertices: Sequence[int]) -> np.ndarray:
        """Columns of all slots of ``vertices``, in vertex order."""
        idx = [i * self.k + j for i in vertices for j in range(self.k)]
        return self.entries[:, idx]

    def __eq__(self, other):
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        return (
            self.q == other.q
            and self.k == other.k
            and self.entries.shape == other.entries.shape
            and bool(np.array_equal(self.entries, other.entries))
        )

    __hash__ = None

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "k": self.k,
            "rows": self.rows,
            "entries": self.entries.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "FieldMatrix":
        try:
            entries = np.array(data["entries"], dtype=np.int64)
            rows = int(data["rows"])
            if rows == 0:
                entries = entries.reshape(0, -1) if entries.size else np.zeros((0, 0), np.int64)
            if entries.ndim != 2 or entries.shape[0] != rows:
                raise InvalidInputError("'rows' does not match 'entries'")
            return cls(int(data["q"]), int(data["k"]), entries)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InvalidInputError):
                raise
            raise InvalidInputError(f"bad matrix JSON: {exc}") from exc


@dataclass(frozen=True, eq=False)
class ReceiverVerdict:
    r: int
    satisfied: bool
    d: int | None = None
    W: np.ndarray | None = None

    def to_dict(self) -> dict:
        return {"receiver": self.r, "satisfied": self.satisfied, "d": self.d}


@dataclass(frozen=True)
class ValidationReport:
    verdicts: tuple[ReceiverVerdict, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return all(v.satisfied for v in self.verdicts)

    @property
    def failing(self) -> list[int]:
        return [v.r for v in self.verdicts if not v.satisfied]

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {
            "valid": self.ok,
            "satisfied": sum(v.satisfied for v in self.verdicts),
            "receivers": len(self.verdicts),
            "failing": self.failing,
            "verdicts": [v.to_dict() for v in self.verdicts],
        }


def indicator_matrix(c: KFoldColoring, q: int = 2) -> FieldMatrix:
    """Column (i, j) is the standard basis vector of color ``C_{i,j}``."""
    G = np.zeros((c.L, c.m * c.k), dtype=np.int64)
    for i, cs in enumerate(c.assign):
        for j, color in enumerate(cs):
            G[color, i * c.k + j] = 1
    return FieldMatrix(q, c.k, G)


def mds_generator(D: int, delta: int, q: int) -> np.ndarray:
    """``delta x D`` generator of a ``[D, delta]`` MDS code over GF(q).

    Identity when ``delta == D``, otherwise Vandermonde rows ``a**t`` on the
    points ``0..D-1``.
    """
    gf.check_prime(q)
    if not 1 <= delta <= D:
        raise InvalidInputError(f"need 1 <= delta <= D, got delta={delta}, D={D}")
    if q < D:
        raise InvalidInputError(f"an [{D},{delta}] MDS code needs q >= {D}, got q={q}")
    if delta == D:
        return np.eye(D, dtype=np.int64)
    pts = np.arange(D, dtype=np.int64)
    rows = [np.ones(D, dtype=np.int64)]
    for _ in range(1, delta):
        rows.append((rows[-1] * pts) % q)
    return np.array(rows, dtype=np.int64)


def _mds_columns(c: KFoldColoring, D: Sequence[int], delta: int, q: int) -> FieldMatrix:
    Gp = mds_generator(len(D), delta, q)
    pos = {color: t for t, color in enumerate(D)}
    G = np.zeros((delta, c.m * c.k), dtype=np.int64)
    for i, cs in enumerate(c.assign):
        for j, color in enumerate(cs):
            if color in pos:
                G[:, i * c.k + j] = Gp[:, pos[color]]
    return FieldMatrix(q, c.k, G)


def mds_matrix(
    c: KFoldColoring, D: Sequence[int], inst: PicodInstance, q: int | None = None
) -> FieldMatrix:
    """``Delta_{C,D} x mk`` encoder: colors in ``D`` get MDS columns, others zero.

    ``q`` defaults to the smallest prime >= ``|D|``.
    """
    D = sorted(set(int(x) for x in D))
    if not is_essential(c, D, inst):
        raise InvalidInputError("color set is not essential for this coloring")
    if q is None:
        q = gf.next_prime(len(D))
    return _mds_columns(c, D, delta_of(c, D, inst), q)


def cover_mds_stack(col, sel, inst: PicodInstance, q: int | None = None) -> FieldMatrix:
    """Stacked MDS matrices of a collection with an essential coloring set cover.

    Member ``p`` contributes ``Delta_{C^p,D_p}`` rows (its local parameter
    over the edges ``D_p`` satisfies); members satisfying nothing are
    skipped. ``q`` defaults to the smallest prime >= the largest ``|D_p|``.
    """
    if len(sel.essential) != len(col):
        raise InvalidInputError("selection must have one color set per coloring")
    parts, covered = [], set()
    for c, D in zip(col, sel.essential):
        D = sorted(set(int(x) for x in D))
        sat = edges_satisfied(c, D, inst)
        if sat:
            parts.append((c, D))
            covered |= sat
    if len(covered) != inst.n:
        raise InvalidInputError("selection is not an essential coloring set cover")
    if q is None:
        q = gf.next_prime(max(len(D) for _, D in parts))
    return stack([_mds_columns(c, D, delta_of(c, D, inst), q) for c, D in parts])


def _check_columns(G: FieldMatrix, inst: PicodInstance, k: int | None) -> None:
    if k is not None and k != G.k:
        raise InvalidInputError(f"matrix has k={G.k}, expected {k}")
    if G.m != inst.m:
        raise InvalidInputError(f"matrix has {G.m} message blocks, instance has m={inst.m}")


def satisfies_receiver(G: FieldMatrix, inst: PicodInstance, r: int, k: int | None = None) -> ReceiverVerdict:
    """Property (P) for receiver ``r``; the first qualifying ``d`` in ascending order wins."""
    _check_columns(G, inst, k)
    k, q = G.k, G.q
    edge = inst.edges[r]
    for d in edge:
        A = G.block([d])
        if gf.rank(A, q) != k:
            continue
        rest = [i for i in edge if i != d]
        B = G.block(rest)
        rb = gf.rank(B, q) if rest else 0
        if gf.rank(np.concatenate([A, B], axis=1), q) != k + rb:
            continue
        target = np.concatenate(
            [np.eye(k, dtype=np.int64), np.zeros((k, B.shape[1]), dtype=np.int64)], axis=1
        )
        W = gf.solve_left(np.concatenate([A, B], axis=1), target, q)
        if W is None:  # unreachable when the rank test passes
            continue
        return ReceiverVerdict(r, True, d, W)
    return ReceiverVerdict(r, False)


def validate_encoder(G: FieldMatrix, inst: PicodInstance, k: int | None = None) -> ValidationReport:
    _check_columns(G, inst, k)
    return ValidationReport(tuple(satisfies_receiver(G, inst, r) for r in range(inst.n)))


def stack(mats: Sequence[FieldMatrix]) -> FieldMatrix:
    if not mats:
        raise InvalidInputError("nothing to stack")
    q, k, cols = mats[0].q, mats[0].k, mats[0].entries.shape[1]
    for M in mats[1:]:
        if M.q != q or M.k != k:
            raise InvalidInputError("stacked matrices must share q and k")
        if M.entries.shape[1] != cols:
            raise InvalidInputError("stacked matrices must have equal column counts")
    return FieldMatrix(q, k, np.concatenate([M.entries for M in mats], axis=0))


def encode(G: FieldMatrix, messages) -> np.ndarray:
    x = np.asarray(messages, dtype=np.int64).reshape(-1)
    if x.size != G.entries.shape[1]:
        raise InvalidInputError(f"expected {G.entries.shape[1]} message symbols, got {x.size}")
    return (G.entries @ (x % G.q)) % G.q


def decode(verdict: ReceiverVerdict, G: FieldMatrix, codeword, side_info: dict, inst: PicodInstance):
    """Recover ``(d, x_d)`` at a satisfied receiver.

    ``side_info`` maps every message index the receiver holds to its ``k``
    symbols.
    """
    if not verdict.satisfied:
        raise InvalidInputError(f"receiver {verdict.r} is not satisfied by this encoder")
    q, k = G.q, G.k
    y = np.asarray(codeword, dtype=np.int64) % q
    for i in inst.side_information(verdict.r):
        if i not in side_info:
            raise InvalidInputError(f"side information for message {i} missing")
        xi = np.asarray(side_info[i], dtype=np.int64).reshape(k)
        y = (y - G.block([i]) @ xi) % q
    return verdict.d, (verdict.W @ y) % q
