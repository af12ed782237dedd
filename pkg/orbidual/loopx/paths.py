"""Sampled loop-group paths with monodromy, the level-k loop cocycle, and holonomy."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.linalg import expm, logm
from scipy.optimize import linear_sum_assignment

from orbidual.core.errors import BlowUpError, DimensionError, DomainError, MonodromyError, RepresentationError
from orbidual.dynamics.integrators import rkmk4_step
from orbidual.extension.checks import ConditionReport, check_alpha_condition
from orbidual.extension.cocycle import LOOP, Cocycle, coadjoint_matrix
from orbidual.groups.double import DoubleGroup
from orbidual.groups.matrix import MEMBERSHIP_TOL, LieGroup
from orbidual.liecore.double import DoubleLieAlgebra
from orbidual.loopx.fourier import FourierLoop, collocation, gamma_cocycle, spectral_derivative

log = logging.getLogger("orbidual.loopx")

DEFAULT_SAMPLES = 64
DEFAULT_BAND = 8
MONODROMY_TOL = 1e-6
BASEPOINTS = 8


def _batched(matrices: np.ndarray) -> np.ndarray:
    m = np.asarray(matrices)
    if m.ndim != 3 or m.shape[1] != m.shape[2]:
        raise DimensionError(f"expected (P, m, m) samples, got {m.shape}")
    return m


@dataclass(frozen=True, eq=False)
class LoopGroupPath:
    """Samples ``l(s_j)`` at ``s_j = 2 pi j / P`` of a path with ``l(s + 2 pi) = l(s) M``."""

    group: LieGroup
    samples: np.ndarray
    monodromy: np.ndarray | None = None

    def __post_init__(self) -> None:
        samples = np.array(_batched(self.samples))
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)
        m = self.group.identity if self.monodromy is None else np.array(self.monodromy)
        object.__setattr__(self, "monodromy", m)
        residual = self.membership_residual
        if residual > MEMBERSHIP_TOL:
            raise RepresentationError(f"{self.group.name}: path sample off the group (residual {residual:.3e})")

    @classmethod
    def constant(cls, group: LieGroup, P: int = DEFAULT_SAMPLES, value: np.ndarray | None = None) -> LoopGroupPath:
        g = group.identity if value is None else np.asarray(value)
        return cls(group, np.broadcast_to(g, (P,) + g.shape).copy())

    @classmethod
    def from_loop(cls, group: LieGroup, x: FourierLoop, P: int = DEFAULT_SAMPLES) -> LoopGroupPath:
        """Closed path s -> exp(X(s))."""
        return cls(group, expm(group.embed(x.samples(P))))

    @property
    def P(self) -> int:
        return self.samples.shape[0]

    @property
    def grid(self) -> np.ndarray:
        return collocation(self.P)

    @property
    def closed(self) -> bool:
        return float(np.abs(self.monodromy - self.group.identity).max()) < MONODROMY_TOL

    @property
    def membership_residual(self) -> float:
        return max(self.group.membership_residual(g) for g in self.samples)

    @property
    def smoothness(self) -> float:
        """Smallest c with |l_{j+1} - l_j| <= c 2pi/P, the wrap-around step using l_0 M."""
        nxt = np.concatenate([self.samples[1:], (self.samples[0] @ self.monodromy)[None]])
        steps = np.linalg.norm(nxt - self.samples, axis=(1, 2))
        return float(steps.max()) * self.P / (2.0 * np.pi)

    @cached_property
    def _twist(self) -> np.ndarray:
        """X with exp(2 pi X) = M, so l(s) exp(-s X) is periodic."""
        if self.closed:
            return np.zeros_like(self.monodromy, dtype=complex)
        return logm(self.monodromy) / (2.0 * np.pi)

    def right_log_derivative(self) -> np.ndarray:
        """l' l^-1 per sample, by spectral differentiation of the periodic part."""
        x = self._twist
        q = self.samples @ expm(-self.grid[:, None, None] * x)
        q_inv = np.linalg.inv(q)
        out = spectral_derivative(q) @ q_inv + q @ x @ q_inv
        if not np.iscomplexobj(self.samples):
            out = out.real
        return out

    def log_derivative_coords(self) -> np.ndarray:
        return self.group.pullback(self.right_log_derivative())

    def inverse(self) -> LoopGroupPath:
        # (l^-1)(s + 2pi) = M^-1 l(s)^-1 is not of the right form unless l is closed.
        if not self.closed:
            raise DomainError("only closed paths have a pointwise inverse path")
        return LoopGroupPath(self.group, np.linalg.inv(self.samples))

    def __matmul__(self, other: LoopGroupPath) -> LoopGroupPath:
        """Pointwise product; the left factor must be closed."""
        if other.P != self.P:
            raise DimensionError(f"paths have {self.P} and {other.P} samples")
        if not self.closed:
            raise DomainError("left factor of a pointwise product must be closed")
        return LoopGroupPath(self.group, self.samples @ other.samples, other.monodromy)

    def sigma_residual(self, later: np.ndarray, indices: np.ndarray) -> float:
        """max |l(s_j)^-1 l(s_j + 2pi) - M| over the given basepoints."""
        later = np.asarray(later)
        sigma = np.linalg.inv(self.samples[indices]) @ later
        return float(np.abs(sigma - self.monodromy).max())

    def to_dict(self) -> dict:
        return {
            "group": self.group.name,
            "samples": self.P,
            "closed": self.closed,
            "monodromy": np.asarray(self.monodromy, dtype=complex),
            "smoothness": self.smoothness,
        }


@dataclass(frozen=True)
class Monodromy:
    samples: np.ndarray
    matrix: np.ndarray
    P: int

    def period(self, k: int = 0) -> np.ndarray:
        """Samples over [2 pi k, 2 pi (k + 1))."""
        return self.samples[k * self.P: (k + 1) * self.P]


def monodromy(alpha: FourierLoop, group: LieGroup, P: int = DEFAULT_SAMPLES, *, periods: int = 1) -> Monodromy:
    """Solve h' = alpha(s) h, h(0) = e with RKMK4 at step 2pi/P; M = h(2pi)."""
    if alpha.algebra.dim != group.algebra.dim:
        raise DimensionError(f"alpha has {alpha.algebra.dim} coordinates, {group.name} needs {group.algebra.dim}")
    if P < 4 * alpha.band:
        raise DomainError(f"P={P} cannot resolve a band-{alpha.band} loop (need P >= {4 * alpha.band})")
    step = 2.0 * np.pi / P
    fine = alpha.values(0.5 * step * np.arange(2 * P * periods + 1))
    embedded = group.embed(fine)
    h = group.identity
    out = [h]
    for j in range(P * periods):
        h = rkmk4_step(h, lambda c, _y, j=j: embedded[2 * j + int(round(2 * c))], step)
        if not np.all(np.isfinite(h)):
            raise BlowUpError(f"monodromy solve blew up at s={(j + 1) * step:.4g}", time=(j + 1) * step)
        out.append(h)
    samples = np.array(out)
    m = samples[P]
    residual = group.membership_residual(m)
    if residual > MEMBERSHIP_TOL:
        m = group.renormalize(m, tol=MEMBERSHIP_TOL, context="monodromy")
    return Monodromy(samples, m, P)


def embed_e_alpha(
    l: LoopGroupPath,
    alpha: FourierLoop,
    double: DoubleGroup,
    *,
    basepoints: int = BASEPOINTS,
) -> LoopGroupPath:
    """The path l h~_alpha in E_alpha(D); sigma is checked at evenly spaced basepoints."""
    if not l.closed:
        raise DomainError("embedding needs a closed path (trivial monodromy)")
    mono = monodromy(alpha, double.nstar_group, l.P, periods=2)
    h = mono.period(0)
    path = LoopGroupPath(l.group, l.samples @ h, mono.matrix)
    idx = np.arange(basepoints) * l.P // basepoints
    later = l.samples[idx] @ mono.samples[l.P + idx]
    residual = path.sigma_residual(later, idx)
    if residual > MONODROMY_TOL:
        raise MonodromyError(f"sigma disagrees with the monodromy by {residual:.3e}")
    log.debug("embedded path: sigma residual %.3e over %d basepoints", residual, basepoints)
    return path


def holonomy(xi: np.ndarray, group: LieGroup, *, refine: int = 4) -> np.ndarray:
    """Parallel transport of h' = xi(s) h around the circle.

    The samples are interpolated trigonometrically and integrated with RKMK4
    on a grid ``refine`` times finer.
    """
    xi = np.asarray(xi, dtype=float)
    loop = FourierLoop.from_samples(group.algebra, xi)
    steps = xi.shape[0] * refine
    step = 2.0 * np.pi / steps
    embedded = group.embed(loop.values(0.5 * step * np.arange(2 * steps + 1)))
    h = group.identity
    for j in range(steps):
        h = rkmk4_step(h, lambda c, _y, j=j: embedded[2 * j + int(round(2 * c))], step)
    return h


def eigenvalue_drift(a: np.ndarray, b: np.ndarray) -> float:
    """Largest gap between optimally matched eigenvalues of two matrices."""
    ea, eb = np.linalg.eigvals(a), np.linalg.eigvals(b)
    cost = np.abs(ea[:, None] - eb[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max(initial=0.0))


def loop_alpha_condition(alpha: FourierLoop, alg: DoubleLieAlgebra, P: int = DEFAULT_SAMPLES) -> ConditionReport:
    """The alpha condition at every collocation point."""
    worst, witness = 0.0, {}
    for s, value in zip(collocation(P), alpha.samples(P)):
        report = check_alpha_condition(value, alg)
        if report.worst_residual > worst:
            worst, witness = report.worst_residual, {**report.witness, "s": float(s)}
    return ConditionReport(worst < 1e-10, worst, witness, kind="loop_alpha_condition")


class LoopCocycle(Cocycle):
    """C_k(l) = k psi(l' l^-1) evaluated per sample on closed paths."""

    kind = LOOP

    def __init__(self, group: LieGroup, k: float = 1.0, *, samples: int = DEFAULT_SAMPLES, **_context):
        super().__init__(group)
        if group.algebra.pairing is None:
            raise DimensionError(f"{group.algebra.name}: loop cocycle needs an invariant pairing")
        self.k = float(k)
        self.samples = int(samples)
        self.pairing = np.asarray(group.algebra.pairing, dtype=float)

    def _samples(self, l: LoopGroupPath | np.ndarray) -> np.ndarray:
        if isinstance(l, LoopGroupPath):
            if not l.closed:
                raise DomainError("loop cocycle is evaluated on closed paths")
            return l.samples
        return _batched(l)

    def __call__(self, l: LoopGroupPath | np.ndarray) -> np.ndarray:
        s = self._samples(l)
        u = self.group.pullback(spectral_derivative(s) @ np.linalg.inv(s))
        return self.k * u @ self.pairing.T

    @property
    def chat(self) -> np.ndarray:
        raise DomainError("the loop cocycle has no finite matrix; use two_cocycle on Fourier loops")

    def two_cocycle(self, x: FourierLoop, y: FourierLoop) -> float:  # type: ignore[override]
        return gamma_cocycle(self.k, x, y)

    def shifted(self, theta: np.ndarray):
        raise DomainError("coboundary shifts of the loop cocycle are not supported")

    def describe(self) -> dict:
        return {"kind": self.kind, "k": self.k, "samples": self.samples}

    def identity_residual(self, l: LoopGroupPath | np.ndarray, k: LoopGroupPath | np.ndarray) -> float:
        ls, ks = self._samples(l), self._samples(k)
        lhs = self(ls @ ks)
        cl, ck = self(ls), self(ks)
        rhs = np.stack([coadjoint_matrix(self.group, g) @ c for g, c in zip(ls, ck)]) + cl
        return float(np.abs(lhs - rhs).max())

    def differential_residual(self, step: float = 1e-6, *, band: int = 2, seed: int = 0) -> float:
        """|C(exp(eps X)) - C(exp(-eps X))| / 2 eps against k psi X' on a random loop."""
        x = FourierLoop.random(self.group.algebra, band, np.random.default_rng(seed))
        plus = self(expm(self.group.embed(step * x.samples(self.samples))))
        minus = self(expm(self.group.embed(-step * x.samples(self.samples))))
        expected = self.k * x.derivative().samples(self.samples) @ self.pairing.T
        return float(np.abs((plus - minus) / (2.0 * step) - expected).max())

    def antisymmetry_residual(self, *, band: int = 3, seed: int = 0) -> float:
        rng = np.random.default_rng(seed)
        x = FourierLoop.random(self.group.algebra, band, rng)
        y = FourierLoop.random(self.group.algebra, band, rng)
        return abs(self.two_cocycle(x, y) + self.two_cocycle(y, x))
