"""Iwasawa splitting of SL(n, C) by modified Gram-Schmidt."""

from __future__ import annotations

import numpy as np

from orbidual.core.errors import FactorizationError

BREAKDOWN_TOL = 1e-12


def iwasawa_split(l: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(k, r)`` with ``l = k @ r``, k unitary and r upper triangular with positive diagonal.

    For det l = 1 both factors have unit determinant.
    """
    l = np.asarray(l, dtype=complex)
    m = l.shape[0]
    q = np.zeros_like(l)
    r = np.zeros_like(l)
    for j in range(m):
        v = l[:, j].copy()
        for i in range(j):
            r[i, j] = np.vdot(q[:, i], v)
            v -= r[i, j] * q[:, i]
        norm = np.linalg.norm(v)
        if norm < BREAKDOWN_TOL:
            raise FactorizationError(f"Gram-Schmidt breakdown at column {j} (norm {norm:.2e})")
        r[j, j] = norm
        q[:, j] = v / norm
    return q, r
