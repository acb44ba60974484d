"""Dimensionless two-cycle amplitudes of the contact interaction.

A pair of exchange cycles of lengths n1 and n2 linked by one interaction contributes
(V_eff / lambda_T^d) n^(-d/2) a_(n1,n2)(s) to the partition function; this module returns a only.
For contact interactions the intra- and inter-cycle amplitudes coincide, so the bosonic combination
(a_inter + a_intra) / 2 is a itself and the fermionic one vanishes."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from src.errors import DomainError
from src.model import Regime, Statistics
from src.specfun import Accuracy, SQRT_PI, erfcx, f_stable
from src.utility.registry import ImplGroup


@dataclass(frozen=True)
class ClusterGeometry:
    n1: int
    n2: int

    def __post_init__(self):
        if self.n1 < 1 or self.n2 < 1:
            raise DomainError(f'Cycle lengths must be positive, got {self.n1=}, {self.n2=}')

    @property
    def n(self) -> int:
        return self.n1 + self.n2

    @property
    def nu_bar_squared(self) -> Fraction:
        return Fraction(2 * self.n1 * self.n2 - self.n, self.n)

    @property
    def nu_bar(self) -> float:
        return math.sqrt(self.nu_bar_squared)


class AmplitudeTerms(NamedTuple):
    a1: float
    a2: float
    a3: float
    a4: float

    @property
    def total(self) -> float:
        return math.fsum(self)


def terms_from_nu(nu: float, s: float, acc: Accuracy = None) -> AmplitudeTerms:
    if s < 0:
        raise DomainError(f'Thermal coupling must be non-negative, got {s=}')
    c = 1.0 + nu * nu
    rs = math.sqrt(s)
    a1 = 2 / math.pi * math.atan(nu) - 1 + 2 * nu * nu * rs / math.sqrt(math.pi * c)
    a2 = -2 / SQRT_PI * nu * rs * erfcx(rs)
    a3 = f_stable(nu, s, acc)
    a4 = -2 * nu * nu * s * a3
    return AmplitudeTerms(a1, a2, a3, a4)


def fermionized_terms_from_nu(nu: float, s: float, acc: Accuracy = None) -> AmplitudeTerms:
    a1, a2, a3, a4 = terms_from_nu(nu, s, acc)
    c = 1.0 + nu * nu
    t1 = -2 / math.pi * nu / c - 2 * nu * nu * math.sqrt(s) / math.sqrt(math.pi * c)
    return AmplitudeTerms(t1, -a2, a3, -a4)


def a_terms(geom: ClusterGeometry, s: float, acc: Accuracy = None) -> AmplitudeTerms:
    return terms_from_nu(geom.nu_bar, s, acc)


amplitude = ImplGroup('amplitude')


@amplitude.register((Regime.DIRECT, Statistics.BOSE))
def _direct_bose(nu, s, acc):
    if s == 0:
        return 0.0
    return terms_from_nu(nu, s, acc).total


@amplitude.register((Regime.DIRECT, Statistics.FERMI))
def _direct_fermi(nu, s, acc):
    return 0.0


@amplitude.register((Regime.FERMIONIZED, Statistics.BOSE))
def _fermionized(nu, s, acc):
    return fermionized_terms_from_nu(nu, s, acc).total


def amplitude_of(nu: float, s: float, statistics=Statistics.BOSE, regime=Regime.DIRECT,
                 acc: Accuracy = None) -> float:
    key = (Regime.parse(regime), Statistics.parse(statistics))
    if key not in amplitude:
        raise DomainError(f'No amplitude for regime {key[0].value} with {key[1].value} statistics')
    return amplitude.get(key)(nu, s, acc)


def a_cluster(geom: ClusterGeometry, s: float, statistics=Statistics.BOSE, acc: Accuracy = None) -> float:
    return amplitude_of(geom.nu_bar, s, statistics, Regime.DIRECT, acc)


def a_cluster_fermionized(geom: ClusterGeometry, s: float, acc: Accuracy = None) -> float:
    """Amplitude of the effective fermionic theory; vanishes as s -> inf."""
    return amplitude_of(geom.nu_bar, s, Statistics.BOSE, Regime.FERMIONIZED, acc)


@dataclass(frozen=True)
class MassPair:
    """Two species of masses m_i, m_j given as ratios to the reference mass (m_ref = 1/2)."""

    mass_ratio_i: float
    mass_ratio_j: float

    def __post_init__(self):
        if not (self.mass_ratio_i > 0 and self.mass_ratio_j > 0):
            raise DomainError(f'Masses must be positive, got {self.mass_ratio_i=}, {self.mass_ratio_j=}')

    @property
    def m_i(self) -> float:
        return self.mass_ratio_i / 2

    @property
    def m_j(self) -> float:
        return self.mass_ratio_j / 2

    @property
    def reduced(self) -> float:
        return self.m_i * self.m_j / (self.m_i + self.m_j)

    @property
    def total(self) -> float:
        return self.m_i + self.m_j

    @property
    def prefactor(self) -> float:
        return math.sqrt(self.total / (4 * self.reduced))

    def cluster_total(self, n_i: int, n_j: int) -> float:
        return n_i * self.m_i + n_j * self.m_j

    def tilde_n(self, n_i: int, n_j: int) -> float:
        return 2 * self.cluster_total(n_i, n_j) / self.total

    def tilde_nu(self, n_i: int, n_j: int) -> float:
        # M n_i n_j >= n_i m_i + n_j m_j for positive cycle lengths
        return math.sqrt(max(self.total * n_i * n_j / self.cluster_total(n_i, n_j) - 1.0, 0.0))

    def thermal_wavelength(self, beta: float) -> float:
        return math.sqrt(math.pi * beta / self.reduced)

    def thermal_coupling(self, s: float) -> float:
        """beta alpha rescaled to the pair's reduced mass; equals s for two reference masses."""
        return 4 * self.reduced * s


def a_cluster_multispecies(n_i: int, n_j: int, masses: MassPair, s: float, acc: Accuracy = None) -> float:
    """Inter-cycle amplitude of two distinguishable species, prefactor sqrt(M / 4 mu) included."""
    if n_i < 1 or n_j < 1:
        raise DomainError(f'Cycle lengths must be positive, got {n_i=}, {n_j=}')
    nu = masses.tilde_nu(n_i, n_j)
    return masses.prefactor * terms_from_nu(nu, masses.thermal_coupling(s), acc).total
