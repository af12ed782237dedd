"""Band-limited loops in a Lie algebra: Fourier coefficients, brackets and the level-k cocycle.

A loop ``X(s) = sum_m a_m e^{ims}`` is stored as a ``(2N + 1, d)`` complex
array with row ``m + N`` holding ``a_m``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from orbidual.core.errors import DimensionError, DomainError, PolicyError
from orbidual.liecore.algebra import LieAlgebra

log = logging.getLogger("orbidual.loopx")

REALITY_TOL = 1e-12
ALIASING_TOL = 1e-8

EXACT = "exact_double_band"
PROJECT = "project_to_band"


def collocation(P: int) -> np.ndarray:
    return 2.0 * np.pi * np.arange(P) / P


@dataclass(frozen=True, eq=False)
class FourierLoop:
    algebra: LieAlgebra
    coeffs: np.ndarray
    reality: bool = True

    def __post_init__(self) -> None:
        c = np.array(self.coeffs, dtype=complex)
        if c.ndim != 2 or c.shape[0] % 2 != 1 or c.shape[1] != self.algebra.dim:
            raise DimensionError(f"loop coefficients must have shape (2N+1, {self.algebra.dim}), got {c.shape}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        if self.reality:
            mismatch = float(np.abs(c - c[::-1].conj()).max(initial=0.0))
            if mismatch > REALITY_TOL * max(1.0, float(np.abs(c).max(initial=0.0))):
                raise DomainError(f"coefficients violate a_-m = conj(a_m) (residual {mismatch:.3e})")

    # -- constructors ------------------------------------------------------------

    @classmethod
    def zeros(cls, algebra: LieAlgebra, band: int = 0) -> FourierLoop:
        return cls(algebra, np.zeros((2 * band + 1, algebra.dim)))

    @classmethod
    def constant(cls, algebra: LieAlgebra, x: np.ndarray, band: int = 0) -> FourierLoop:
        c = np.zeros((2 * band + 1, algebra.dim), dtype=complex)
        c[band] = np.asarray(x, dtype=float)
        return cls(algebra, c)

    @classmethod
    def mode(cls, algebra: LieAlgebra, m: int, a: np.ndarray, band: int | None = None, *, real: bool = True) -> FourierLoop:
        """a e^{ims}; with ``real`` the conjugate mode is added so the loop is a cos/sin combination."""
        band = abs(m) if band is None else band
        c = np.zeros((2 * band + 1, algebra.dim), dtype=complex)
        a = np.asarray(a, dtype=complex)
        if real and m != 0:
            c[band + m] += 0.5 * a
            c[band - m] += 0.5 * a.conj()
        else:
            c[band + m] += a
        return cls(algebra, c, reality=real)

    @classmethod
    def cosine(cls, algebra: LieAlgebra, a: np.ndarray, m: int = 1) -> FourierLoop:
        return cls.mode(algebra, m, np.asarray(a, dtype=float))

    @classmethod
    def sine(cls, algebra: LieAlgebra, a: np.ndarray, m: int = 1) -> FourierLoop:
        return cls.mode(algebra, m, -1j * np.asarray(a, dtype=float))

    @classmethod
    def random(cls, algebra: LieAlgebra, band: int, rng: np.random.Generator, scale: float = 1.0) -> FourierLoop:
        c = np.zeros((2 * band + 1, algebra.dim), dtype=complex)
        c[band] = rng.normal(scale=scale, size=algebra.dim)
        for m in range(1, band + 1):
            a = rng.normal(scale=scale, size=algebra.dim) + 1j * rng.normal(scale=scale, size=algebra.dim)
            c[band + m] = a
            c[band - m] = a.conj()
        return cls(algebra, c)

    @classmethod
    def from_samples(cls, algebra: LieAlgebra, samples: np.ndarray, band: int | None = None) -> FourierLoop:
        """Interpolate real samples at ``collocation(P)``; the Nyquist mode is dropped."""
        samples = np.asarray(samples, dtype=float)
        P = samples.shape[0]
        top = (P - 1) // 2
        band = top if band is None else min(band, top)
        spectrum = np.fft.fft(samples, axis=0) / P
        c = np.zeros((2 * band + 1, algebra.dim), dtype=complex)
        for m in range(-band, band + 1):
            c[band + m] = spectrum[m % P]
        return cls(algebra, 0.5 * (c + c[::-1].conj()))

    # -- evaluation ----------------------------------------------------------------

    @property
    def band(self) -> int:
        return (self.coeffs.shape[0] - 1) // 2

    def coefficient(self, m: int) -> np.ndarray:
        if abs(m) > self.band:
            return np.zeros(self.algebra.dim, dtype=complex)
        return self.coeffs[m + self.band]

    def values(self, s: np.ndarray | float) -> np.ndarray:
        s = np.atleast_1d(np.asarray(s, dtype=float))
        m = np.arange(-self.band, self.band + 1)
        out = np.exp(1j * np.outer(s, m)) @ self.coeffs
        if self.reality:
            imag = float(np.abs(out.imag).max(initial=0.0))
            if imag > REALITY_TOL * max(1.0, float(np.abs(out).max(initial=0.0))):
                raise DomainError(f"loop value has imaginary part {imag:.3e}")
            return out.real
        return out

    def samples(self, P: int) -> np.ndarray:
        return self.values(collocation(P))

    def derivative(self) -> FourierLoop:
        m = np.arange(-self.band, self.band + 1)
        return FourierLoop(self.algebra, 1j * m[:, None] * self.coeffs, self.reality)

    def padded(self, band: int) -> FourierLoop:
        if band < self.band:
            return self.truncated(band)
        c = np.zeros((2 * band + 1, self.algebra.dim), dtype=complex)
        c[band - self.band: band + self.band + 1] = self.coeffs
        return FourierLoop(self.algebra, c, self.reality)

    def truncated(self, band: int) -> FourierLoop:
        if band >= self.band:
            return self.padded(band)
        return FourierLoop(self.algebra, self.coeffs[self.band - band: self.band + band + 1], self.reality)

    def tail_energy(self, band: int) -> float:
        """Sum of |a_m|^2 over |m| > band."""
        if band >= self.band:
            return 0.0
        tail = np.r_[self.coeffs[: self.band - band], self.coeffs[self.band + band + 1:]]
        return float((np.abs(tail) ** 2).sum())

    # -- arithmetic ----------------------------------------------------------------

    def _aligned(self, other: FourierLoop) -> tuple[np.ndarray, np.ndarray, int]:
        if other.algebra is not self.algebra and other.algebra.dim != self.algebra.dim:
            raise DimensionError(f"loops live in {self.algebra.name} and {other.algebra.name}")
        band = max(self.band, other.band)
        return self.padded(band).coeffs, other.padded(band).coeffs, band

    def __add__(self, other: FourierLoop) -> FourierLoop:
        a, b, _ = self._aligned(other)
        return FourierLoop(self.algebra, a + b, self.reality and other.reality)

    def __sub__(self, other: FourierLoop) -> FourierLoop:
        a, b, _ = self._aligned(other)
        return FourierLoop(self.algebra, a - b, self.reality and other.reality)

    def __mul__(self, scale: float) -> FourierLoop:
        return FourierLoop(self.algebra, self.coeffs * float(scale), self.reality)

    __rmul__ = __mul__

    def distance(self, other: FourierLoop) -> float:
        a, b, _ = self._aligned(other)
        return float(np.abs(a - b).max(initial=0.0))


@dataclass(frozen=True)
class TruncationPolicy:
    mode: str = EXACT
    band: int = 8

    def __post_init__(self) -> None:
        if self.mode not in (EXACT, PROJECT):
            raise DomainError(f"unknown truncation mode {self.mode!r} (use {EXACT} or {PROJECT})")
        if self.band < 0:
            raise DomainError("band must be non-negative")


def loop_bracket(x: FourierLoop, y: FourierLoop, policy: TruncationPolicy | None = None) -> FourierLoop:
    """Pointwise bracket as a convolution of coefficients."""
    policy = policy or TruncationPolicy()
    if x.algebra.dim != y.algebra.dim:
        raise DimensionError(f"loops live in {x.algebra.name} and {y.algebra.name}")
    band = x.band + y.band
    if policy.mode == EXACT and band > 2 * policy.band:
        raise PolicyError(f"bracket band {band} exceeds twice the policy band {policy.band}")
    pairs = np.einsum("pi,qj,ijk->pqk", x.coeffs, y.coeffs, x.algebra.structure)
    out = np.zeros((2 * band + 1, x.algebra.dim), dtype=complex)
    for p in range(pairs.shape[0]):
        out[p: p + pairs.shape[1]] += pairs[p]
    result = FourierLoop(x.algebra, out, x.reality and y.reality)
    if policy.mode == PROJECT and band > policy.band:
        tail = result.tail_energy(policy.band)
        if tail > ALIASING_TOL:
            log.debug("bracket projection drops tail energy %.3e", tail)
        result = result.truncated(policy.band)
    return result


def loop_pairing(x: FourierLoop, y: FourierLoop) -> float:
    """(1/2pi) int (X, Y) ds = sum_m (a_m, b_-m)."""
    pairing = x.algebra.pairing
    if pairing is None:
        raise DimensionError(f"{x.algebra.name}: no invariant pairing declared")
    a, b, _ = x._aligned(y)
    return float(np.einsum("mi,ij,mj->", a, np.asarray(pairing), b[::-1]).real)


def gamma_cocycle(k: float, x: FourierLoop, y: FourierLoop) -> float:
    """(k / 2pi) int (X, Y') ds."""
    return k * loop_pairing(x, y.derivative())


def spectral_derivative(samples: np.ndarray) -> np.ndarray:
    """d/ds of periodic samples at ``collocation(P)`` along axis 0 (Nyquist mode zeroed)."""
    samples = np.asarray(samples)
    P = samples.shape[0]
    wave = np.fft.fftfreq(P, d=1.0 / P)
    if P % 2 == 0:
        wave[P // 2] = 0.0
    shape = (P,) + (1,) * (samples.ndim - 1)
    out = np.fft.ifft(1j * wave.reshape(shape) * np.fft.fft(samples, axis=0), axis=0)
    return out if np.iscomplexobj(samples) else out.real


def spectral_tail(samples: np.ndarray, band: int) -> float:
    """Relative energy of the sample spectrum above *band*."""
    spectrum = np.fft.fft(np.asarray(samples), axis=0)
    P = spectrum.shape[0]
    wave = np.abs(np.fft.fftfreq(P, d=1.0 / P))
    energy = np.abs(spectrum) ** 2
    total = float(energy.sum())
    if total == 0.0:
        return 0.0
    return float(energy[wave > band].sum()) / total
