"""Monodromic string Lagrangians on LG*: body form, space form with the dressing bivector."""

from __future__ import annotations

import logging

import numpy as np
from scipy.linalg import expm

from orbidual.core.errors import DimensionError, SingularBlockError
from orbidual.dynamics.sigma import BLOCK_CONDITION_LIMIT, SigmaOperator, dual_sigma_blocks, sigma_blocks
from orbidual.extension.checks import require_alpha_condition
from orbidual.groups.double import DoubleGroup
from orbidual.loopx.paths import LoopGroupPath

log = logging.getLogger("orbidual.loopx")


def dressing_bivector(double: DoubleGroup, htilde: np.ndarray) -> np.ndarray:
    """pi~(h~) = Ad_h~ Pi_n* Ad_h~^-1 restricted to n, as an (n*, n) matrix."""
    n = double.n
    total = double.total
    return total.adjoint_matrix(htilde)[n:, n:] @ total.adjoint_matrix(np.linalg.inv(htilde))[n:, :n]


def _nstar_coords(double: DoubleGroup, m: np.ndarray) -> np.ndarray:
    z = double.total.pullback(m)
    return z[..., double.n:]


def body_log_derivative(double: DoubleGroup, gtilde: LoopGroupPath) -> np.ndarray:
    """g~^-1 g~' per sample in n* coordinates."""
    g = gtilde.samples
    return _nstar_coords(double, np.linalg.inv(g) @ gtilde.right_log_derivative() @ g)


def space_velocity(double: DoubleGroup, gtilde: LoopGroupPath, velocity: np.ndarray) -> np.ndarray:
    """Ad_g~ v per sample: body velocities to right-trivialized ones."""
    n = double.n
    velocity = np.asarray(velocity, dtype=float)
    return np.stack([double.total.adjoint_matrix(g)[n:, n:] @ v for g, v in zip(gtilde.samples, velocity)])


def _check_shapes(double: DoubleGroup, gtilde: LoopGroupPath, velocity: np.ndarray) -> np.ndarray:
    velocity = np.asarray(velocity, dtype=float)
    if velocity.shape != (gtilde.P, double.n):
        raise DimensionError(f"velocity must have shape ({gtilde.P}, {double.n}), got {velocity.shape}")
    return velocity


def monodromic_lagrangian(
    double: DoubleGroup,
    op: SigmaOperator,
    gtilde: LoopGroupPath,
    velocity: np.ndarray,
    alpha: np.ndarray,
) -> float:
    """(1/2pi) int 1/2 <(G~ + B~)(v + q), v - q> ds with q = alpha + g~^-1 g~'.

    ``velocity`` holds the body velocities g~^-1 dg~/dt per sample.
    """
    velocity = _check_shapes(double, gtilde, velocity)
    alpha = np.asarray(alpha, dtype=float)
    require_alpha_condition(alpha, double.algebra)
    q = alpha + body_log_derivative(double, gtilde)
    total = 0.0
    for g, v, qj in zip(gtilde.samples, velocity, q):
        blocks = dual_sigma_blocks(double, op, g)
        total += 0.5 * (v - qj) @ (blocks.G + blocks.B) @ (v + qj)
    return float(total / gtilde.P)


def monodromic_lagrangian_space(
    double: DoubleGroup,
    op: SigmaOperator,
    gtilde: LoopGroupPath,
    velocity: np.ndarray,
    alpha: np.ndarray | None = None,
) -> float:
    """(1/2pi) int 1/2 <u-, (M + pi~(g~))^-1 u+> ds, u+- = dg~/dt g~^-1 +- (g~' g~^-1 + Ad_g~ alpha).

    ``velocity`` is right-trivialized; ``gtilde`` may carry a monodromy.
    M is the (G + B) block of the operator at the identity.
    """
    velocity = _check_shapes(double, gtilde, velocity)
    n = double.n
    alpha = np.zeros(n) if alpha is None else np.asarray(alpha, dtype=float)
    if np.any(alpha):
        require_alpha_condition(alpha, double.algebra)
    base = sigma_blocks(double, op, double.total.identity)
    m = base.G + base.B
    twist = _nstar_coords(double, gtilde.right_log_derivative())
    total = 0.0
    for g, w, t in zip(gtilde.samples, velocity, twist):
        shift = t + double.total.adjoint_matrix(g)[n:, n:] @ alpha
        k = m + dressing_bivector(double, g)
        cond = np.linalg.cond(k)
        if not np.isfinite(cond) or cond > BLOCK_CONDITION_LIMIT:
            raise SingularBlockError(f"M + pi~ is not invertible (cond {cond:.2e})")
        total += 0.5 * (w - shift) @ np.linalg.solve(k, w + shift)
    return float(total / gtilde.P)


def open_string_path(double: DoubleGroup, gtilde: LoopGroupPath, alpha: np.ndarray) -> LoopGroupPath:
    """m~(s) = g~(s) exp(s alpha), with monodromy exp(2 pi alpha)."""
    a = double.nstar_group.embed(np.asarray(alpha, dtype=float))
    factors = expm(gtilde.grid[:, None, None] * a)
    return LoopGroupPath(gtilde.group, gtilde.samples @ factors, expm(2.0 * np.pi * a))
