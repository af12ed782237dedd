"""Finite-dimensional Lie algebras given by structure constants.

Elements are coordinate vectors over a fixed ordered basis.  Dual vectors
live in the dual basis, so ``ad*_X = ad_X^T`` and
``<ad*_X xi, Y> = <xi, [X, Y]>``.
"""

from __future__ import annotations

import json
import logging
from dataclasses import InitVar, dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from orbidual.core.errors import BialgebraError, ConfigurationError, DimensionError

log = logging.getLogger("orbidual.liecore")

CONSTRUCTION_TOL = 1e-12


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float, copy=True)
    a.setflags(write=False)
    return a


def jacobi_tensor(c: np.ndarray) -> np.ndarray:
    """J[i,j,k,l] = sum_m c[i,j,m]c[m,k,l] + cyclic(i,j,k)."""
    return (
        np.einsum("ijm,mkl->ijkl", c, c)
        + np.einsum("jkm,mil->ijkl", c, c)
        + np.einsum("kim,mjl->ijkl", c, c)
    )


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    """Structure constants ``c[i, j, k]`` with ``[e_i, e_j] = c[i, j, k] e_k``."""

    name: str
    structure: np.ndarray
    labels: tuple[str, ...] = ()
    pairing: np.ndarray | None = None
    validate: InitVar[bool] = True

    def __post_init__(self, validate: bool) -> None:
        c = np.asarray(self.structure, dtype=float)
        if c.ndim != 3 or len(set(c.shape)) != 1 or c.shape[0] == 0:
            raise DimensionError(f"{self.name}: structure must be a (d, d, d) array, got {c.shape}")
        d = c.shape[0]
        object.__setattr__(self, "structure", _frozen(c))
        labels = tuple(self.labels) or tuple(f"e{i + 1}" for i in range(d))
        if len(labels) != d:
            raise DimensionError(f"{self.name}: {len(labels)} labels for dimension {d}")
        object.__setattr__(self, "labels", labels)
        if self.pairing is not None:
            b = np.asarray(self.pairing, dtype=float)
            if b.shape != (d, d):
                raise DimensionError(f"{self.name}: pairing must be {d}x{d}")
            object.__setattr__(self, "pairing", _frozen(b))
        if validate:
            self._validate()

    def _validate(self) -> None:
        c = self.structure
        anti = np.abs(c + c.transpose(1, 0, 2))
        if anti.max() > CONSTRUCTION_TOL:
            i, j, k = np.unravel_index(int(anti.argmax()), anti.shape)
            raise BialgebraError(
                f"{self.name}: structure constants not antisymmetric at ({i}, {j}, {k})",
                witness=(int(i), int(j), int(k)), residual=float(anti.max()),
            )
        residual, witness = self.jacobi_residual()
        if residual > CONSTRUCTION_TOL:
            raise BialgebraError(
                f"{self.name}: Jacobi identity fails at basis triple {witness[:3]} "
                f"(component {witness[3]}, residual {residual:.3e}); not a Lie bialgebra",
                witness=witness, residual=residual,
            )
        if self.pairing is not None:
            b = self.pairing
            if np.abs(b - b.T).max() > CONSTRUCTION_TOL:
                raise BialgebraError(f"{self.name}: pairing is not symmetric")
            inv = self.invariance_residual()
            if inv > CONSTRUCTION_TOL:
                raise BialgebraError(f"{self.name}: pairing not ad-invariant (residual {inv:.3e})")

    # -- sizes ---------------------------------------------------------------

    @property
    def dim(self) -> int:
        return self.structure.shape[0]

    # -- residuals -----------------------------------------------------------

    def jacobi_residual(self) -> tuple[float, tuple[int, int, int, int]]:
        jac = np.abs(jacobi_tensor(self.structure))
        idx = np.unravel_index(int(jac.argmax()), jac.shape)
        return float(jac.max()), tuple(int(i) for i in idx)  # type: ignore[return-value]

    def invariance_residual(self) -> float:
        """max |([e_i,e_j],e_k) + (e_j,[e_i,e_k])|."""
        if self.pairing is None:
            return 0.0
        c, b = self.structure, self.pairing
        r = np.einsum("ijm,mk->ijk", c, b) + np.einsum("jm,ikm->ijk", b, c)
        return float(np.abs(r).max())

    # -- coordinate arithmetic -------------------------------------------------

    def _check(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v)
        if v.shape[-1] != self.dim:
            raise DimensionError(f"{self.name}: expected {self.dim} coordinates, got {v.shape[-1]}")
        return v

    def bracket_coords(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Bracket of coordinate vectors; broadcasts over leading axes."""
        x, y = self._check(x), self._check(y)
        return np.einsum("...i,...j,ijk->...k", x, y, self.structure)

    def ad_matrix(self, x: np.ndarray) -> np.ndarray:
        """Matrix of ``ad_X`` acting on coordinate columns."""
        return np.einsum("i,ijk->kj", self._check(x), self.structure)

    def ad_star_coords(self, x: np.ndarray, xi: np.ndarray) -> np.ndarray:
        return self.ad_matrix(x).T @ self._check(xi)

    def bracket_form(self, xi: np.ndarray) -> np.ndarray:
        """Antisymmetric matrix ``B[i, j] = <xi, [e_i, e_j]>``."""
        return self.structure @ self._check(xi)

    def pair(self, x: np.ndarray, y: np.ndarray) -> float:
        if self.pairing is None:
            raise DimensionError(f"{self.name}: no invariant pairing declared")
        return float(self._check(x) @ self.pairing @ self._check(y))

    # -- elements --------------------------------------------------------------

    def element(self, coeffs: Any) -> AlgebraElement:
        return AlgebraElement(np.asarray(coeffs, dtype=float), self)

    def basis(self, i: int) -> AlgebraElement:
        return self.element(np.eye(self.dim)[i])

    def zero(self) -> AlgebraElement:
        return self.element(np.zeros(self.dim))

    # -- derived algebras ------------------------------------------------------

    def change_basis(self, s: np.ndarray, name: str | None = None) -> LieAlgebra:
        """New basis ``e'_a = sum_k S[k, a] e_k``."""
        s = np.asarray(s, dtype=float)
        s_inv = np.linalg.inv(s)
        c = np.einsum("ka,lb,klm,cm->abc", s, s, self.structure, s_inv)
        pairing = None if self.pairing is None else s.T @ self.pairing @ s
        return LieAlgebra(name or self.name, c, pairing=pairing)

    def corrupted(self, i: int, j: int, k: int, delta: float) -> LieAlgebra:
        """Copy with ``c[i,j,k]`` (and its antisymmetric partner) shifted; unvalidated."""
        c = np.array(self.structure)
        c[i, j, k] += delta
        c[j, i, k] -= delta
        return LieAlgebra(self.name + "~", c, self.labels, self.pairing, validate=False)

    def to_dict(self) -> dict[str, Any]:
        nz = np.argwhere(np.abs(self.structure) > 0)
        out: dict[str, Any] = {
            "dim": self.dim,
            "labels": list(self.labels),
            "structure": [[int(i), int(j), int(k), float(self.structure[i, j, k])] for i, j, k in nz],
        }
        if self.pairing is not None:
            pz = np.argwhere(np.abs(self.pairing) > 0)
            out["pairing"] = [[int(i), int(j), float(self.pairing[i, j])] for i, j in pz]
        return out


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    coeffs: np.ndarray
    home: LieAlgebra = field(repr=False)

    def __post_init__(self) -> None:
        v = np.asarray(self.coeffs, dtype=float)
        if v.shape != (self.home.dim,):
            raise DimensionError(f"{self.home.name}: element needs {self.home.dim} coordinates, got {v.shape}")
        object.__setattr__(self, "coeffs", _frozen(v))

    def _same_home(self, other: AlgebraElement) -> None:
        if other.home is not self.home:
            raise DimensionError(f"elements of {self.home.name} and {other.home.name} cannot be combined")

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        self._same_home(other)
        return AlgebraElement(self.coeffs + other.coeffs, self.home)

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        self._same_home(other)
        return AlgebraElement(self.coeffs - other.coeffs, self.home)

    def __neg__(self) -> AlgebraElement:
        return AlgebraElement(-self.coeffs, self.home)

    def __mul__(self, s: float) -> AlgebraElement:
        return AlgebraElement(s * self.coeffs, self.home)

    __rmul__ = __mul__


def bracket(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    x._same_home(y)
    return AlgebraElement(x.home.bracket_coords(x.coeffs, y.coeffs), x.home)


def ad_star(x: AlgebraElement, xi: np.ndarray) -> np.ndarray:
    xi = np.asarray(xi, dtype=float)
    if xi.shape != (x.home.dim,):
        raise DimensionError(f"{x.home.name}: dual vector needs {x.home.dim} coordinates, got {xi.shape}")
    return x.home.ad_star_coords(x.coeffs, xi)


def abelian(n: int, name: str | None = None) -> LieAlgebra:
    return LieAlgebra(name or f"R{n}", np.zeros((n, n, n)))


def algebra_from_dict(data: dict[str, Any], name: str = "custom") -> LieAlgebra:
    """Build from ``{dim, labels, structure: [[i,j,k,v],...], pairing: [[i,j,v],...]}``.

    Each structure entry also sets its antisymmetric partner.
    """
    try:
        d = int(data["dim"])
        c = np.zeros((d, d, d))
        for i, j, k, v in data.get("structure", []):
            c[int(i), int(j), int(k)] = float(v)
            c[int(j), int(i), int(k)] = -float(v)
        pairing = None
        if data.get("pairing"):
            pairing = np.zeros((d, d))
            for i, j, v in data["pairing"]:
                pairing[int(i), int(j)] = float(v)
                pairing[int(j), int(i)] = float(v)
    except (KeyError, TypeError, ValueError, IndexError) as e:
        raise ConfigurationError(f"malformed algebra definition: {e}") from e
    return LieAlgebra(data.get("name", name), c, tuple(data.get("labels", ())), pairing)


def load_algebra(path: Path) -> LieAlgebra:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigurationError(f"{path}: {e}") from e
    return algebra_from_dict(data, name=path.stem)
