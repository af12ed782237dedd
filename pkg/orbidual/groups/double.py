"""Double groups H = N * N*: factorization and dressing actions."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from orbidual.core.errors import DomainError, FactorizationError
from orbidual.groups.matrix import LieGroup
from orbidual.liecore.double import DoubleLieAlgebra

log = logging.getLogger("orbidual.groups")

N_FIRST = "N-first"
NSTAR_FIRST = "Nstar-first"
ORDERS = (N_FIRST, NSTAR_FIRST)

FACTORIZATION_TOL = 1e-10

Splitter = Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]]


@dataclass(frozen=True)
class Factorization:
    """``l = g @ htilde`` (N-first) or ``l = htilde @ g`` (Nstar-first)."""

    g: np.ndarray
    htilde: np.ndarray
    order: str
    residual: float

    def product(self) -> np.ndarray:
        if self.order == N_FIRST:
            return self.g @ self.htilde
        return self.htilde @ self.g


@dataclass(frozen=True, eq=False)
class DoubleGroup:
    name: str
    algebra: DoubleLieAlgebra
    total: LieGroup
    n_group: LieGroup
    nstar_group: LieGroup
    splitter: Splitter = field(repr=False)

    @property
    def n(self) -> int:
        return self.algebra.n

    def factorize(self, l: np.ndarray, order: str = N_FIRST) -> Factorization:
        if order not in ORDERS:
            raise DomainError(f"unknown factorization order {order!r}")
        l = np.asarray(l)
        if order == NSTAR_FIRST:
            htilde, g = self.splitter(l)
        else:
            h_inv, g_inv = self.splitter(np.linalg.inv(l))
            g, htilde = np.linalg.inv(g_inv), np.linalg.inv(h_inv)
        fac = Factorization(g, htilde, order, 0.0)
        residual = float(np.linalg.norm(fac.product() - l))
        if residual > FACTORIZATION_TOL * max(1.0, float(np.linalg.norm(l))):
            raise FactorizationError(f"{self.name}: {order} factorization residual {residual:.3e}")
        return Factorization(g, htilde, order, residual)


def factorize(double: DoubleGroup, l: np.ndarray, order: str = N_FIRST) -> Factorization:
    return double.factorize(l, order)


def dress(double: DoubleGroup, htilde: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Dr(h~, g) = Pi_N(h~ g) in N-first order."""
    return double.factorize(np.asarray(htilde) @ np.asarray(g), N_FIRST).g


def dual_dress(double: DoubleGroup, g: np.ndarray, htilde: np.ndarray) -> np.ndarray:
    """Pi_{N*}(g h~) in Nstar-first order."""
    return double.factorize(np.asarray(g) @ np.asarray(htilde), NSTAR_FIRST).htilde


def dressing_generator(double: DoubleGroup, xi: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Body velocity -Pi_n Ad_{g^-1} xi of t -> Dr(exp(-t xi), g) at t = 0."""
    a = double.total.adjoint_matrix(np.linalg.inv(g))
    return -(a @ double.algebra.from_nstar(xi))[: double.n]
