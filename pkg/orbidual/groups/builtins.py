"""Built-in groups: SE(2) (plain and rigid-body basis), SL(2,C) = AN(2) * SU(2), R^2n."""

from __future__ import annotations

import numpy as np

from orbidual.groups import register_group
from orbidual.groups.double import DoubleGroup
from orbidual.groups.iwasawa import iwasawa_split
from orbidual.groups.matrix import (
    LieGroup,
    an_project,
    an_residual,
    se2_project,
    se2_residual,
    sl_project,
    sl_residual,
    su_project,
    su_residual,
    translation_project,
    translation_residual,
)
from orbidual.liecore.builtins import RigidBodyConstants, abelian_double as abelian_double_algebra
from orbidual.liecore.builtins import lu_weinstein, rigid_body_algebra, se2 as se2_algebra


def _unit(m: int, i: int, j: int, value: complex = 1.0) -> np.ndarray:
    out = np.zeros((m, m), dtype=complex if isinstance(value, complex) else float)
    out[i, j] = value
    return out


_J = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
_P1 = _unit(3, 0, 2)
_P2 = _unit(3, 1, 2)


@register_group("se2")
def se2() -> LieGroup:
    return LieGroup("SE(2)", se2_algebra(), np.stack([_J, _P1, _P2]), se2_residual, se2_project)


@register_group("rigid_body_se2")
def rigid_body_se2(inertia: tuple[float, float, float] = (1.0, 2.0, 3.0)) -> LieGroup:
    k = RigidBodyConstants(tuple(float(v) for v in inertia))  # type: ignore[arg-type]
    basis = np.stack([k.k1 * _P1, k.k2 * _P2, _J / (k.k1 * k.k2)])
    return LieGroup("SE(2)", rigid_body_algebra(k.inertia), basis, se2_residual, se2_project)


_AN_BASIS = np.array([
    [[0.5, 0.0], [0.0, -0.5]],
    [[0.0, -1j], [0.0, 0.0]],
    [[0.0, 1.0], [0.0, 0.0]],
], dtype=complex)

_SU_BASIS = np.array([
    [[1j, 0.0], [0.0, -1j]],
    [[0.0, 1.0], [-1.0, 0.0]],
    [[0.0, 1j], [1j, 0.0]],
], dtype=complex)


@register_group("lu_weinstein_su2")
def lu_weinstein_su2() -> DoubleGroup:
    algebra = lu_weinstein()
    total = LieGroup("SL(2,C)", algebra.total, np.concatenate([_AN_BASIS, _SU_BASIS]), sl_residual, sl_project)
    return DoubleGroup(
        name="SL(2,C)",
        algebra=algebra,
        total=total,
        n_group=LieGroup("AN(2)", algebra.n_algebra, _AN_BASIS, an_residual, an_project),
        nstar_group=LieGroup("SU(2)", algebra.nstar_algebra, _SU_BASIS, su_residual, su_project),
        splitter=iwasawa_split,
    )


def _translation_split(l: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """``l = k @ r`` with k translating along n* and r along n."""
    size = l.shape[0] - 1
    n = size // 2
    k = np.eye(size + 1)
    r = np.eye(size + 1)
    k[n:size, size] = l[n:size, size].real
    r[:n, size] = l[:n, size].real
    return k, r


@register_group("abelian_double")
def abelian_double(n: int = 2) -> DoubleGroup:
    algebra = abelian_double_algebra(n)
    size = 2 * n
    basis = np.stack([_unit(size + 1, i, size) for i in range(size)])
    total = LieGroup(f"R^{size}", algebra.total, basis, translation_residual, translation_project)
    # Factor groups act on the same (2n+1)-dimensional matrices.
    return DoubleGroup(
        name=f"R^{size}",
        algebra=algebra,
        total=total,
        n_group=LieGroup(f"R^{n}", algebra.n_algebra, basis[:n], translation_residual, translation_project),
        nstar_group=LieGroup(f"R^{n}*", algebra.nstar_algebra, basis[n:], translation_residual, translation_project),
        splitter=_translation_split,
    )
