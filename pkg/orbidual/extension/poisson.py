"""Observables on the extended dual, the Lie-Poisson bracket {,}_{c,theta} and the shift map."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Protocol

import numpy as np

from orbidual.core.errors import DomainError
from orbidual.core.logs import note_once
from orbidual.extension.cocycle import Cocycle, ExtendedDual

log = logging.getLogger("orbidual.extension")

FD_STEP = 1e-6


class Observable(Protocol):
    def __call__(self, xi: np.ndarray) -> float: ...

    def gradient(self, xi: np.ndarray) -> np.ndarray: ...


@dataclass(frozen=True)
class LinearObservable:
    """F(xi) = <xi, x>."""

    x: np.ndarray

    def __call__(self, xi: np.ndarray) -> float:
        return float(np.asarray(xi) @ self.x)

    def gradient(self, xi: np.ndarray) -> np.ndarray:
        return np.asarray(self.x, dtype=float)


@dataclass(frozen=True)
class QuadraticObservable:
    """F(xi) = 1/2 xi^T Q xi with Q symmetric."""

    q: np.ndarray

    def __call__(self, xi: np.ndarray) -> float:
        xi = np.asarray(xi)
        return float(0.5 * xi @ self.q @ xi)

    def gradient(self, xi: np.ndarray) -> np.ndarray:
        return self.q @ np.asarray(xi)


@dataclass(frozen=True)
class FunctionObservable:
    func: Callable[[np.ndarray], float]
    grad: Callable[[np.ndarray], np.ndarray] | None = field(default=None, repr=False)
    step: float = FD_STEP

    def __call__(self, xi: np.ndarray) -> float:
        return float(self.func(np.asarray(xi, dtype=float)))

    def gradient(self, xi: np.ndarray) -> np.ndarray:
        xi = np.asarray(xi, dtype=float)
        if self.grad is not None:
            return np.asarray(self.grad(xi), dtype=float)
        out = np.empty_like(xi)
        for i in range(xi.size):
            e = np.zeros_like(xi)
            e[i] = self.step
            out[i] = (self.func(xi + e) - self.func(xi - e)) / (2.0 * self.step)
        return out


@dataclass(frozen=True)
class ProductObservable:
    f: Observable
    g: Observable

    def __call__(self, xi: np.ndarray) -> float:
        return self.f(xi) * self.g(xi)

    def gradient(self, xi: np.ndarray) -> np.ndarray:
        return self.f(xi) * gradient_of(self.g, xi) + self.g(xi) * gradient_of(self.f, xi)


def gradient_of(obs: object, xi: np.ndarray) -> np.ndarray:
    grad = getattr(obs, "gradient", None)
    if grad is None:
        raise DomainError(f"{type(obs).__name__} supplies no gradient; wrap it in FunctionObservable")
    return np.asarray(grad(np.asarray(xi, dtype=float)), dtype=float)


def bracket_of_differentials(cocycle: Cocycle, xi: np.ndarray, b: float, x: np.ndarray, y: np.ndarray) -> float:
    """<xi, [X, Y]> + b c_theta(X, Y)."""
    alg = cocycle.group.algebra
    return float(xi @ alg.bracket_coords(x, y) + b * cocycle.two_cocycle(x, y))


def lie_poisson_bracket(cocycle: Cocycle, f: Observable, g: Observable, point: ExtendedDual) -> float:
    note_once(log, "bracket-sign", "Lie-Poisson bracket taken as +<xi, [dF, dG]> + b c_theta(dF, dG)")
    df = gradient_of(f, point.xi)
    dg = gradient_of(g, point.xi)
    return bracket_of_differentials(cocycle, point.xi, point.b, df, dg)


def hamiltonian_flow(cocycle: Cocycle, dh: np.ndarray, point: ExtendedDual) -> np.ndarray:
    """xi' = -ad*_{dh} xi - b chat dh, so that F' = {F, h}."""
    alg = cocycle.group.algebra
    return -alg.ad_star_coords(dh, point.xi) - point.b * cocycle.chat @ dh


def shift_iso(p: ExtendedDual, alpha: np.ndarray) -> ExtendedDual:
    """(eta, 1) -> (eta + alpha, 1); Poisson from {,}_{c,-alpha} to {,}_{c,0}."""
    if p.b != 1.0:
        raise DomainError(f"shift isomorphism is defined on the b = 1 slice, got b = {p.b}")
    return ExtendedDual(p.xi + np.asarray(alpha, dtype=float), 1.0)


def shift_iso_inverse(p: ExtendedDual, alpha: np.ndarray) -> ExtendedDual:
    return shift_iso(p, -np.asarray(alpha, dtype=float))


# -- orbits and the Kirillov-Kostant form ------------------------------------------


def orbit_tangent(cocycle: Cocycle, point: ExtendedDual, x: np.ndarray) -> np.ndarray:
    """Infinitesimal extended coadjoint action of X at the point."""
    return hamiltonian_flow(cocycle, np.asarray(x, dtype=float), point)


def orbit_generator_matrix(cocycle: Cocycle, point: ExtendedDual) -> np.ndarray:
    return np.stack([orbit_tangent(cocycle, point, e) for e in np.eye(cocycle.dim)], axis=1)


def kk_form(cocycle: Cocycle, point: ExtendedDual, v: np.ndarray, w: np.ndarray) -> float:
    """Kirillov-Kostant form on two orbit tangent vectors.

    Generators are recovered by least squares; the value does not depend on
    the choice modulo the stabilizer.
    """
    gen = orbit_generator_matrix(cocycle, point)
    x = np.linalg.lstsq(gen, np.asarray(v, dtype=float), rcond=None)[0]
    y = np.linalg.lstsq(gen, np.asarray(w, dtype=float), rcond=None)[0]
    return bracket_of_differentials(cocycle, point.xi, point.b, x, y)
