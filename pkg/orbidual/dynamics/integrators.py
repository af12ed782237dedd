"""Fixed-step RK4 and Runge-Kutta-Munthe-Kaas (RKMK4) steps.

RKMK4 works on matrices: ``field(c, y)`` returns the right-trivialized
velocity ``A`` (so that ``y' = A y``) at stage fraction ``c``; arrays may
carry leading batch axes.
"""

from __future__ import annotations

from typing import Callable

import numpy as np
from scipy.linalg import expm

Vector = np.ndarray
Bracket = Callable[[np.ndarray, np.ndarray], np.ndarray]


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def rk4_step(f: Callable[[float, Vector], Vector], t: float, y: Vector, h: float) -> tuple[Vector, Vector]:
    """One classical RK4 step; also returns f(t, y)."""
    k1 = f(t, y)
    k2 = f(t + 0.5 * h, y + 0.5 * h * k1)
    k3 = f(t + 0.5 * h, y + 0.5 * h * k2)
    k4 = f(t + h, y + h * k3)
    return y + h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0, k1


def dexpinv(theta: np.ndarray, u: np.ndarray, bracket: Bracket = commutator) -> np.ndarray:
    """dexp^{-1}_theta(u) truncated after the third-order term."""
    tu = bracket(theta, u)
    return u - 0.5 * tu + bracket(theta, tu) / 12.0


def rkmk4_step(
    y: np.ndarray,
    field: Callable[[float, np.ndarray], np.ndarray],
    h: float,
    bracket: Bracket = commutator,
    exp: Callable[[np.ndarray], np.ndarray] = expm,
) -> np.ndarray:
    k1 = h * field(0.0, y)
    k2 = h * dexpinv(0.5 * k1, field(0.5, exp(0.5 * k1) @ y), bracket)
    k3 = h * dexpinv(0.5 * k2, field(0.5, exp(0.5 * k2) @ y), bracket)
    k4 = h * dexpinv(k3, field(1.0, exp(k3) @ y), bracket)
    return exp((k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0) @ y


def hermite_midpoint(y0: Vector, y1: Vector, f0: Vector, f1: Vector, h: float) -> Vector:
    return 0.5 * (y0 + y1) + h * (f0 - f1) / 8.0
