"""Hamiltonian H-spaces: T*N, T*N*, the chiral space and their companions."""

from __future__ import annotations

from orbidual.hamspaces.base import HamiltonianSpace, PhasePoint
from orbidual.hamspaces.chiral import ChiralSpace, ReducedOrbitSpace
from orbidual.hamspaces.cotangent import CotangentN, CotangentNstar
from orbidual.hamspaces.simple import CotangentGroup, OrbitChartSpace

__all__ = [
    "ChiralSpace",
    "CotangentGroup",
    "CotangentN",
    "CotangentNstar",
    "HamiltonianSpace",
    "OrbitChartSpace",
    "PhasePoint",
    "ReducedOrbitSpace",
]
