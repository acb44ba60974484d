from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.integrate import quad
from scipy.interpolate import CubicSpline

from src.errors import DomainError, ConvergenceError
from src.utility.logger import get_logger_func

_warn, _info, _debug = get_logger_func('model')

RING = 'ring'
HARMONIC = 'harmonic'
SAMPLED = 'sampled'

# Boltzmann weight relative to its peak beyond which the potential counts as confining
_CONFINED_WEIGHT = 1e-12
_PROBE_DISTANCE = 1e6


@dataclass(frozen=True)
class Confinement:
    """A homogeneous external potential V(lambda q) = lambda^mu V(q) in D dimensions.

    Units: hbar = 1 and hbar^2/2m = 1 for the reference mass, so a harmonic trap of frequency omega
    reads V(q) = (m omega^2 / 2) q^2 = omega^2 q^2 / 4."""

    shape: str
    D: int = 1
    mu: float = math.inf
    length: Optional[float] = None
    omega: Optional[float] = None
    potential: Optional[Callable[[float], float]] = None
    table: Optional[Tuple[Tuple[float, ...], Tuple[float, ...]]] = None
    e0: float = 1.0
    scale: float = 1.0

    def __post_init__(self):
        if self.D < 1:
            raise DomainError(f'Physical dimension must be positive, got {self.D=}')
        if not self.mu > 0:
            raise DomainError(f'Homogeneity degree must be positive, got {self.mu=}', mu=self.mu)
        if not self.e0 > 0:
            raise DomainError(f'Reference energy must be positive, got {self.e0=}')
        if self.shape == RING:
            if self.length is None or not self.length > 0:
                raise DomainError(f'Ring needs a positive length, got {self.length=}')
            if not math.isinf(self.mu):
                raise DomainError('A ring is unconfined: mu must be inf.')
        elif self.shape == HARMONIC:
            if self.omega is None or not self.omega > 0:
                raise DomainError(f'Harmonic trap needs a positive frequency, got {self.omega=}')
            if self.mu != 2:
                raise DomainError(f'Harmonic trap has mu=2, got {self.mu=}')
        elif self.shape == SAMPLED:
            if (self.potential is None) == (self.table is None):
                raise DomainError('Sampled confinement needs exactly one of potential or table.')
            if math.isinf(self.mu):
                raise DomainError('Sampled confinement needs a finite homogeneity degree.')
            if self.D != 1:
                raise DomainError('Sampled potentials are one dimensional.')
        else:
            raise DomainError(f'Unknown confinement shape {self.shape!r}')

    @classmethod
    def ring(cls, length: float) -> Confinement:
        return cls(RING, length=float(length))

    @classmethod
    def harmonic(cls, omega: float, D: int = 1, e0: float = 1.0) -> Confinement:
        return cls(HARMONIC, D=D, mu=2.0, omega=float(omega), e0=e0)

    @classmethod
    def sampled(cls, potential: Callable[[float], float], mu: float, e0: float = 1.0) -> Confinement:
        return cls(SAMPLED, mu=float(mu), potential=potential, e0=e0)

    @classmethod
    def from_table(cls, q, v, mu: float, e0: float = 1.0) -> Confinement:
        """Potential known on a grid; outside the grid the particle is excluded."""
        q, v = tuple(map(float, q)), tuple(map(float, v))
        assert len(q) == len(v) >= 4, 'Need at least four samples.'
        assert all(b > a for a, b in zip(q, q[1:])), 'Grid must be strictly increasing.'
        return cls(SAMPLED, mu=float(mu), table=(q, v), e0=e0)

    @property
    def unconfined(self) -> bool:
        return math.isinf(self.mu)

    def with_effective_volume(self, v_eff: float, mass_ratio: float = 1.0) -> Confinement:
        """Same shape, parameters rescaled so that effective_volume(result) == v_eff."""
        assert v_eff > 0, f'{v_eff=}'
        if self.shape == RING:
            return replace(self, length=float(v_eff))
        if self.shape == HARMONIC:
            return replace(self, omega=4 * math.pi / (mass_ratio * v_eff ** (1 / self.D)))
        # V_eff scales as scale^(-D/mu)
        current = effective_volume(self, mass_ratio)
        factor = (v_eff / current) ** (-self.mu / self.D)
        return replace(self, scale=self.scale * factor)


def effective_dimension(confinement: Confinement) -> float:
    if confinement.unconfined:
        return float(confinement.D)
    return confinement.D * (1 + 2 / confinement.mu)


def effective_volume(confinement: Confinement, mass_ratio: float = 1.0) -> float:
    """V_eff = (4 pi / (lambda e0))^(D/mu) * int dq exp(-V(q)/e0); the length for a ring.

    The prefactor makes the single-particle Z equal V_eff / lambda_T^d at high temperature."""
    assert mass_ratio > 0, f'{mass_ratio=}'
    if confinement.shape == RING:
        return confinement.length
    if confinement.shape == HARMONIC:
        return (4 * math.pi / (mass_ratio * confinement.omega)) ** confinement.D
    prefactor = (4 * math.pi / (mass_ratio * confinement.e0)) ** (confinement.D / confinement.mu)
    return prefactor * _boltzmann_integral(confinement)


def _sampled_potential(confinement: Confinement):
    if confinement.potential is not None:
        fn = confinement.potential
        return lambda q: confinement.scale * fn(q), (-np.inf, np.inf)
    q, v = map(np.asarray, confinement.table)
    spline = CubicSpline(q, v)
    return lambda t: confinement.scale * float(spline(t)), (q[0], q[-1])


def _boltzmann_integral(confinement: Confinement) -> float:
    potential, (lo, hi) = _sampled_potential(confinement)
    e0 = confinement.e0

    def weight(q):
        # capped for potentials unbounded below
        return math.exp(min(-potential(q) / e0, 700.0))

    if math.isinf(lo):
        peak = max(weight(0.0), _CONFINED_WEIGHT)
        far = max(weight(-_PROBE_DISTANCE), weight(_PROBE_DISTANCE))
        if far > _CONFINED_WEIGHT * peak:
            raise DomainError('Potential is not confining: Boltzmann weight does not decay.',
                              far_weight=far, peak_weight=peak)
        pieces = [quad(weight, -np.inf, 0.0, epsabs=0, epsrel=1e-11, limit=200, full_output=1),
                  quad(weight, 0.0, np.inf, epsabs=0, epsrel=1e-11, limit=200, full_output=1)]
    else:
        pieces = [quad(weight, lo, hi, epsabs=0, epsrel=1e-11, limit=500, full_output=1)]

    value = sum(p[0] for p in pieces)
    error = sum(p[1] for p in pieces)
    if not math.isfinite(value) or value <= 0:
        raise DomainError('Boltzmann-weighted potential integral diverges.', value=value)
    if any(len(p) > 3 for p in pieces) and error > 1e-10 * value:
        raise ConvergenceError('Effective volume quadrature did not converge.',
                               achieved=error / value, target=1e-10)
    return value
