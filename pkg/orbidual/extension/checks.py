"""Gates for duality: cocycle compatibility with H = N * N* and the condition on alpha."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from scipy.linalg import null_space

from orbidual.core.errors import ConditionError, DimensionError, DomainError
from orbidual.extension.cocycle import Cocycle
from orbidual.groups.double import DoubleGroup
from orbidual.liecore.double import DoubleLieAlgebra

log = logging.getLogger("orbidual.extension")

COMPATIBILITY_TOL = 1e-9
ALPHA_TOL = 1e-10


@dataclass(frozen=True)
class ConditionReport:
    ok: bool
    worst_residual: float
    witness: dict[str, Any] = field(default_factory=dict)
    kind: str = ""

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "ok": self.ok, "worst_residual": self.worst_residual, "witness": self.witness}


def check_compatibility(
    cocycle: Cocycle,
    double: DoubleGroup,
    *,
    samples: int = 64,
    seed: int = 0,
    scale: float = 1.0,
    tol: float = COMPATIBILITY_TOL,
) -> ConditionReport:
    """psi-bar C(g) must lie in n for g in N and in n* for h~ in N*."""
    alg = double.algebra
    n = alg.n
    rng = np.random.default_rng(seed)
    worst, witness = 0.0, {}
    for _ in range(samples):
        x = scale * rng.standard_normal(n)
        for factor, z, block in (("N", alg.from_n(x), slice(n, None)), ("N*", alg.from_nstar(x), slice(None, n))):
            value = alg.from_dual(cocycle(double.total.exp(z)))
            residual = float(np.abs(value[block]).max())
            if residual > worst:
                worst = residual
                witness = {"factor": factor, "exponent": z.tolist(), "value": value.tolist()}
    return ConditionReport(worst < tol, worst, witness, kind="compatibility")


def _nstar_element(alpha: np.ndarray, alg: DoubleLieAlgebra) -> np.ndarray:
    alpha = np.asarray(alpha, dtype=float)
    n = alg.n
    if alpha.shape == (n,):
        return alpha
    if alpha.shape == (2 * n,):
        if np.abs(alpha[:n]).max() > 0.0:
            raise DomainError("alpha must lie in the n* block")
        return alpha[n:]
    raise DimensionError(f"alpha needs {n} or {2 * n} coordinates, got {alpha.shape}")


def alpha_as_dual(alpha: np.ndarray, alg: DoubleLieAlgebra) -> np.ndarray:
    """psi(0, alpha), the dual vector used as a shift."""
    return alg.to_dual(alg.from_nstar(_nstar_element(alpha, alg)))


def check_alpha_condition(alpha: np.ndarray, alg: DoubleLieAlgebra) -> ConditionReport:
    """Pi_{n*}[X_i, alpha] over the whole n basis."""
    a = alg.from_nstar(_nstar_element(alpha, alg))
    worst, witness = 0.0, {}
    for i, x in enumerate(np.eye(alg.n)):
        comp = alg.total.bracket_coords(alg.from_n(x), a)[alg.n:]
        residual = float(np.abs(comp).max())
        if residual > worst:
            worst, witness = residual, {"index": i, "label": alg.total.labels[i], "component": comp.tolist()}
    return ConditionReport(worst < ALPHA_TOL, worst, witness, kind="alpha_condition")


def require_alpha_condition(alpha: np.ndarray, alg: DoubleLieAlgebra) -> None:
    report = check_alpha_condition(alpha, alg)
    if not report.ok:
        raise ConditionError(
            f"Pi_n*[X, alpha] != 0 for X = {report.witness.get('label')}", residual=report.worst_residual
        )


def condition_subspace(alg: DoubleLieAlgebra) -> np.ndarray:
    """Orthonormal basis (columns, n* coordinates) of the alphas meeting the condition."""
    n = alg.n
    rows = []
    for x in np.eye(n):
        rows.append(np.stack([alg.total.bracket_coords(alg.from_n(x), alg.from_nstar(y))[n:] for y in np.eye(n)], axis=1))
    return null_space(np.vstack(rows), rcond=1e-10)
