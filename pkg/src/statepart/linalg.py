"""Dense real-matrix primitives shared by the rest of the package.

Matrices are plain 2-D float64 numpy arrays (row-major).  Everything here
is a pure function; inputs are never mutated.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

__all__ = [
    "as_matrix",
    "mat_mul",
    "abs_sum",
    "hconcat",
    "numerical_rank",
    "exact_rank",
]


def as_matrix(values, name: str = "matrix") -> np.ndarray:
    """Validate and return ``values`` as a 2-D float64 array.

    Rejects empty shapes and non-finite entries.
    """
    a = np.asarray(values, dtype=float)
    if a.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got {a.ndim}-D")
    if a.shape[0] < 1 or a.shape[1] < 1:
        raise ValueError(f"{name} must be non-empty, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} contains non-finite entries")
    return a


def mat_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product a @ b with an explicit conformability check."""
    a = as_matrix(a, "left operand")
    b = as_matrix(b, "right operand")
    if a.shape[1] != b.shape[0]:
        raise ValueError(
            f"cannot multiply shapes {a.shape} and {b.shape}: "
            f"inner dimensions {a.shape[1]} != {b.shape[0]}"
        )
    return a @ b


def abs_sum(a) -> float:
    """Sum of the magnitudes of all entries (the matrix |.| operator)."""
    a = as_matrix(a, "matrix")
    return float(np.abs(a).sum())


def hconcat(blocks) -> np.ndarray:
    """Concatenate blocks horizontally; all blocks must share a row count."""
    blocks = list(blocks)
    if not blocks:
        raise ValueError("hconcat needs at least one block")
    mats = [as_matrix(blk, f"block {i}") for i, blk in enumerate(blocks)]
    rows = mats[0].shape[0]
    for i, m in enumerate(mats):
        if m.shape[0] != rows:
            raise ValueError(
                f"hconcat row mismatch: block 0 has {rows} rows, "
                f"block {i} has {m.shape[0]}"
            )
    return np.hstack(mats)


def numerical_rank(a, tol: float | None = None) -> int:
    """Rank by singular-value thresholding.

    With ``tol=None`` the threshold is max(rows, cols) * eps * sigma_max,
    which tracks the matrix scale; a float ``tol`` is used as an absolute
    threshold instead.  Raises ``numpy.linalg.LinAlgError`` if the SVD does
    not converge (never silently returns a rank).
    """
    a = as_matrix(a, "matrix")
    sigma = np.linalg.svd(a, compute_uv=False)
    if sigma.size == 0:
        return 0
    if tol is None:
        tol = max(a.shape) * np.finfo(float).eps * float(sigma[0])
    return int(np.count_nonzero(sigma > tol))


def exact_rank(a) -> int:
    """Rank of an integer-valued matrix by fraction-arithmetic elimination.

    Accepts anything array-like whose entries are (mathematically) integers;
    Python ints of any size are fine.  This is the exact oracle the floating
    rank test is validated against.
    """
    arr = np.asarray(a, dtype=object)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"matrix must be non-empty and 2-D, got shape {arr.shape}")
    rows = []
    for row in arr.tolist():
        frac_row = []
        for v in row:
            if isinstance(v, (int, np.integer)):
                frac_row.append(Fraction(int(v)))
            else:
                fv = float(v)
                if fv != int(fv):
                    raise ValueError(f"exact_rank requires integer entries, got {v!r}")
                frac_row.append(Fraction(int(fv)))
        rows.append(frac_row)

    n_rows = len(rows)
    n_cols = len(rows[0])
    rank = 0
    for col in range(n_cols):
        pivot_row = None
        for i in range(rank, n_rows):
            if rows[i][col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        pivot = rows[rank][col]
        for i in range(rank + 1, n_rows):
            factor = rows[i][col] / pivot
            if factor != 0:
                for j in range(col, n_cols):
                    rows[i][j] -= factor * rows[rank][j]
        rank += 1
        if rank == n_rows:
            break
    return rank
