"""Canonical partition functions to first order in the contact interaction.

Z_1 = sum_l [z_l + dz_l(s)] x^l, x = V_eff / lambda_T^d, where

dz_l(s) = sum_{n=2}^{N-l+1} (+-1)^n n^(-d/2) z_{l-1}^(N-n) sum_{n1=1}^{n-1} a_(n1, n-n1)(s)."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, Optional, Sequence

import numpy as np
from scipy.interpolate import CubicSpline

from src.clusters import ClusterGeometry, MassPair, a_cluster_multispecies, amplitude_of
from src.combinatorics import nonint_coefficients
from src.errors import DomainError, ProviderError
from src.model import Regime, Statistics, SystemSpec, ThermalPoint
from src.specfun import Accuracy
from src.utility.fn import poly_fsum
from src.utility.logger import get_logger_func, get_warn_once

_warn, _info, _debug = get_logger_func('partition')
_warn_once = get_warn_once('partition')


def _effective_statistics(statistics: Statistics, regime: Regime) -> Statistics:
    """Statistics of the coefficients that multiply the amplitudes."""
    if regime is Regime.FERMIONIZED:
        if statistics is not Statistics.BOSE:
            raise DomainError('The fermionized regime maps bosons onto fermions; got fermions.')
        return Statistics.FERMI
    return statistics


@lru_cache(maxsize=16384)
def _pair_sum(n: int, s: float, statistics: Statistics, regime: Regime) -> float:
    """sum_{n1=1}^{n-1} a_(n1, n-n1)(s), folded over n1 <-> n - n1."""
    terms = []
    for n1 in range(1, n // 2 + 1):
        value = amplitude_of(ClusterGeometry(n1, n - n1).nu_bar, s, statistics, regime)
        terms.append(value if 2 * n1 == n else 2 * value)
    return math.fsum(terms)


def _delta_z(N: int, d: float, statistics: Statistics, l: int, s: float, regime: Regime,
             pair_sum: Callable[[int], float]) -> float:
    if regime is Regime.DIRECT and (statistics is Statistics.FERMI or s == 0):
        return 0.0
    base = _effective_statistics(statistics, regime)
    sign = base.sign
    terms = []
    for n in range(2, N - l + 2):
        z = nonint_coefficients(N - n, d, base).coefficient(l - 1)
        if z == 0.0:
            continue
        terms.append(sign ** n * n ** (-d / 2) * z * pair_sum(n))
    return math.fsum(terms)


@lru_cache(maxsize=65536)
def _delta_z_cached(N: int, d: float, statistics: Statistics, l: int, s: float, regime: Regime) -> float:
    return _delta_z(N, d, statistics, l, s, regime, lambda n: _pair_sum(n, s, statistics, regime))


def delta_z(N: int, d: float, statistics, l: int, s: float, regime=Regime.DIRECT, acc: Accuracy = None) -> float:
    """First-order interaction correction to z_l^(N)."""
    statistics, regime = Statistics.parse(statistics), Regime.parse(regime)
    if not 1 <= l <= N:
        raise DomainError(f'Coefficient index out of range: {l=}, {N=}', N=N, l=l)
    if s < 0:
        raise DomainError(f'Thermal coupling must be non-negative, got {s=}')
    if acc is None:
        return _delta_z_cached(int(N), float(d), statistics, int(l), float(s), regime)

    def pair_sum(n):
        terms = []
        for n1 in range(1, n):
            terms.append(amplitude_of(ClusterGeometry(n1, n - n1).nu_bar, s, statistics, regime, acc))
        return math.fsum(terms)

    return _delta_z(N, d, statistics, l, s, regime, pair_sum)


@dataclass(frozen=True)
class InteractingCoefficients:
    N: int
    d: float
    statistics: Statistics
    regime: Regime = Regime.DIRECT

    @property
    def base(self):
        """z_l in the direct regime, the fermionic z~_l in the fermionized one."""
        return nonint_coefficients(self.N, self.d, _effective_statistics(self.statistics, self.regime))

    def delta_z(self, l: int, s: float, acc: Accuracy = None) -> float:
        return delta_z(self.N, self.d, self.statistics, l, s, self.regime, acc)

    def total(self, s: float, acc: Accuracy = None) -> Dict[int, float]:
        base = self.base
        return {l: base.coefficient(l) + self.delta_z(l, s, acc) for l in range(1, self.N + 1)}


def interacting_coefficients(spec: SystemSpec, regime=Regime.DIRECT) -> InteractingCoefficients:
    return InteractingCoefficients(spec.N, spec.d, spec.statistics, Regime.parse(regime))


def species_coupling(spec: SystemSpec, tp: ThermalPoint, i: int = 0) -> float:
    """Thermal coupling of species i with itself, measured on the species' own mass scale."""
    return spec.species[i].mass_ratio * tp.s(spec.coupling(i, i))


def _report_breakdown(z: float, **params):
    if z <= 0:
        key = tuple(sorted(params.items()))
        _warn_once(key, f'First-order partition function is not positive ({z=:.6g}) at {params}; '
                        f'the expansion breaks down here.', stacklevel=3)


def z1_partition(spec: SystemSpec, tp: ThermalPoint, regime=Regime.DIRECT, acc: Accuracy = None) -> float:
    """Z to first order. Several species give prod Z_0 + multispecies_delta_Z."""
    if not spec.is_single:
        z = math.prod(species_z0(spec, tp, i) for i in range(len(spec.species))) \
            + multispecies_delta_Z(spec, tp, acc)
    else:
        coeffs = interacting_coefficients(spec, regime).total(species_coupling(spec, tp, 0), acc)
        z = poly_fsum(coeffs, tp.x(spec))
    _report_breakdown(z, N=spec.N, beta=tp.beta, v_eff=spec.v_eff, alpha=str(spec.alpha))
    return z


def z0_partition(spec: SystemSpec, tp: ThermalPoint) -> float:
    return math.prod(species_z0(spec, tp, i) for i in range(len(spec.species)))


def species_z0(spec: SystemSpec, tp: ThermalPoint, i: int, count: Optional[int] = None) -> float:
    """Z_0 of `count` particles of species i (its full count by default); Z_0^(0) = 1."""
    species = spec.species[i]
    count = species.count if count is None else count
    if count == 0:
        return 1.0
    return nonint_coefficients(count, spec.d, species.statistics).evaluate(tp.x(spec, i))


def _species_delta_z(spec: SystemSpec, tp: ThermalPoint, i: int, acc: Accuracy) -> float:
    species = spec.species[i]
    s = species_coupling(spec, tp, i)
    coeffs = {l: delta_z(species.count, spec.d, species.statistics, l, s, acc=acc)
              for l in range(1, species.count + 1)}
    return poly_fsum(coeffs, tp.x(spec, i))


def _cross_delta_z(spec: SystemSpec, tp: ThermalPoint, i: int, j: int, acc: Accuracy) -> float:
    si, sj = spec.species[i], spec.species[j]
    masses = MassPair(si.mass_ratio, sj.mass_ratio)
    s = tp.s(spec.coupling(i, j))
    if s == 0:
        return 0.0
    d = spec.d
    scale = spec.v_eff / masses.thermal_wavelength(tp.beta) ** d
    terms = []
    for ni in range(1, si.count + 1):
        for nj in range(1, sj.count + 1):
            sign = si.statistics.sign ** (ni - 1) * sj.statistics.sign ** (nj - 1)
            amp = scale * masses.tilde_n(ni, nj) ** (-d / 2) * a_cluster_multispecies(ni, nj, masses, s, acc)
            terms.append(sign * amp * species_z0(spec, tp, i, si.count - ni) * species_z0(spec, tp, j, sj.count - nj))
    return math.fsum(terms)


def multispecies_delta_Z(spec: SystemSpec, tp: ThermalPoint, acc: Accuracy = None) -> float:
    """First-order correction for several species: within-species corrections times the other
    species' Z_0, plus one interacting inter-species cycle pair per term."""
    k = len(spec.species)
    z0 = [species_z0(spec, tp, i) for i in range(k)]
    terms = []
    for i in range(k):
        others = math.prod(z0[m] for m in range(k) if m != i)
        terms.append(_species_delta_z(spec, tp, i, acc) * others)
    for i in range(k):
        for j in range(i + 1, k):
            others = math.prod(z0[m] for m in range(k) if m not in (i, j))
            terms.append(_cross_delta_z(spec, tp, i, j, acc) * others)
    return math.fsum(terms)


@dataclass(frozen=True)
class SplitAnsatz:
    """Lowest two many-body levels as functions of V_eff; the rest of the spectrum from QCE.

    Z = exp(-beta E0) + exp(-beta E1) sum_{l=0}^N w_l x^l with w_0 = -1 and w_l = z_l + dz_l."""

    E0: Optional[Callable[[float], float]]
    E1: Optional[Callable[[float], float]]
    name: str = 'user'

    @classmethod
    def from_table(cls, volumes: Sequence[float], e0: Sequence[float], e1: Sequence[float],
                   name: str = 'table') -> SplitAnsatz:
        volumes = np.asarray(volumes, dtype=float)
        if volumes.size < 4 or np.any(np.diff(volumes) <= 0):
            raise DomainError('Level table needs at least four strictly increasing volumes.')
        lo, hi = volumes[0], volumes[-1]

        def wrap(spline):
            def level(v):
                if not lo <= v <= hi:
                    raise ProviderError(f'V_eff={v} outside the tabulated range [{lo}, {hi}]', v_eff=v)
                return float(spline(v))

            return level

        return cls(wrap(CubicSpline(volumes, e0)), wrap(CubicSpline(volumes, e1)), name)

    def levels(self, v_eff: float):
        if self.E0 is None or self.E1 is None:
            raise ProviderError(f'Split ansatz {self.name!r} lacks an E0/E1 provider.')
        return self.E0(v_eff), self.E1(v_eff)

    @staticmethod
    def weights(spec: SystemSpec, s: float, acc: Accuracy = None) -> Dict[int, float]:
        w = interacting_coefficients(spec).total(s, acc)
        w[0] = -1.0
        return w


def split_partition(spec: SystemSpec, tp: ThermalPoint, ansatz: Optional[SplitAnsatz], acc: Accuracy = None) -> float:
    if ansatz is None:
        raise ProviderError('split_partition needs a SplitAnsatz with E0/E1 providers.')
    v_eff = spec.v_eff
    e0, e1 = ansatz.levels(v_eff)
    w = SplitAnsatz.weights(spec, species_coupling(spec, tp, 0), acc)
    poly = poly_fsum(w, tp.x(spec))
    # factor exp(-beta E1) out so that neither exponential over- or underflows alone
    return math.exp(-tp.beta * e1) * (math.exp(-tp.beta * (e0 - e1)) + poly)
