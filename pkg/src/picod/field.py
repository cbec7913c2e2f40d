"""Dense linear algebra over prime fields GF(q)."""

from __future__ import annotations

import numpy as np

from .errors import InvalidInputError


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q < 4:
        return True
    if q % 2 == 0:
        return False
    f = 3
    while f * f <= q:
        if q % f == 0:
            return False
        f += 2
    return True


def next_prime(n: int) -> int:
    """Smallest prime >= n."""
    p = max(2, n)
    while not is_prime(p):
        p += 1
    return p


def check_prime(q: int) -> None:
    if not is_prime(q):
        raise InvalidInputError(f"field size must be prime, got {q}")


def inv(a: int, q: int) -> int:
    return pow(int(a) % q, q - 2, q)


def row_reduce(A, q: int):
    """Reduced row echelon form of ``A`` mod ``q`` and its pivot columns."""
    R = np.array(A, dtype=np.int64) % q
    if R.ndim != 2:
        raise InvalidInputError("expected a 2-D matrix")
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + nz[0]
        if p != r:
            R[[r, p]] = R[[p, r]]
        R[r] = (R[r] * inv(R[r, c], q)) % q
        col = R[:, c].copy()
        col[r] = 0
        R = (R - np.outer(col, R[r])) % q
        pivots.append(c)
        r += 1
    return R, pivots


def rank(A, q: int) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return len(row_reduce(A, q)[1])


def solve(A, B, q: int):
    """Some ``X`` with ``A @ X = B`` mod ``q``, or None if inconsistent."""
    A = np.asarray(A, dtype=np.int64) % q
    B = np.asarray(B, dtype=np.int64) % q
    vec = B.ndim == 1
    if vec:
        B = B[:, None]
    n = A.shape[1]
    aug = np.concatenate([A, B], axis=1)
    R, pivots = row_reduce(aug, q)
    if any(p >= n for p in pivots):
        return None
    X = np.zeros((n, B.shape[1]), dtype=np.int64)
    for i, p in enumerate(pivots):
        X[p] = R[i, n:]
    return X[:, 0] if vec else X


def solve_left(A, T, q: int):
    """Some ``W`` with ``W @ A = T`` mod ``q``, or None."""
    X = solve(np.asarray(A).T, np.asarray(T).T, q)
    return None if X is None else X.T % q
