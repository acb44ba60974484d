"""Exact canonical partition functions from level lists and from the ideal-gas recursion."""
from __future__ import annotations

import math
from typing import Callable, List, Tuple, Union

import numpy as np

from src.errors import CompletenessError, DomainError
from src.model import Statistics
from src.oracles.levels import LevelList
from src.utility.fn import richardson_derivative
from src.utility.logger import get_logger_func

_warn, _info, _debug = get_logger_func('oracles')

COMPLETENESS_RATIO = 1e-12

SingleParticle = Union[LevelList, Callable[[float], float]]


def _boltzmann(levels: LevelList, beta: float) -> Tuple[float, np.ndarray]:
    """Ground energy and Boltzmann weights relative to it, with the completeness guard applied."""
    if beta <= 0:
        raise DomainError(f'{beta=} must be positive')
    if not len(levels):
        raise CompletenessError('Empty level list.', e_max=levels.e_max)
    E = np.asarray(levels.energies)
    g = np.asarray(levels.degeneracies, dtype=float)
    e0 = E[0]
    weights = g * np.exp(-beta * (E - e0))
    total = math.fsum(weights)
    edge = math.exp(-beta * (levels.e_max - e0))
    if edge >= COMPLETENESS_RATIO * total:
        raise CompletenessError(f'Levels up to E_max={levels.e_max} do not converge the sum at {beta=}; '
                                f'raise E_max.', e_max=levels.e_max, ratio=edge / total, beta=beta)
    return e0, weights


def canonical_partition_from_levels(levels: LevelList, beta: float, log: bool = False) -> float:
    """Z = sum_n g_n exp(-beta E_n) over a level list complete below its E_max."""
    e0, weights = _boltzmann(levels, beta)
    ln_z = -beta * e0 + math.log(math.fsum(weights))
    return ln_z if log else math.exp(ln_z)


def canonical_pressure_from_levels(levels: LevelList, beta: float) -> float:
    """P = -<dE/dV_eff> from the per-level slopes."""
    if levels.slopes is None:
        raise DomainError('Level list carries no dE/dV slopes.')
    _, weights = _boltzmann(levels, beta)
    return -math.fsum(weights * np.asarray(levels.slopes)) / math.fsum(weights)


def _single_particle(z1: SingleParticle) -> Callable[[float], float]:
    if isinstance(z1, LevelList):
        return lambda beta: canonical_partition_from_levels(z1, beta)
    return z1


def canonical_ideal_recursion(z1: SingleParticle, N: int, statistics, beta: float) -> float:
    """Z_N = (1/N) sum_k (+-1)^(k+1) Z_1(k beta) Z_(N-k), Z_0 = 1."""
    if N < 0:
        raise DomainError(f'{N=} must be non-negative')
    sign = Statistics.parse(statistics).sign
    z1 = _single_particle(z1)
    powers = [z1(k * beta) for k in range(1, N + 1)]
    Z: List[float] = [1.0]
    for n in range(1, N + 1):
        terms = [sign ** (k + 1) * powers[k - 1] * Z[n - k] for k in range(1, n + 1)]
        Z.append(math.fsum(terms) / n)
    return Z[N]


def harmonic_z1(omega: float) -> Callable[[float], float]:
    """Single-particle 1D oscillator partition function 1 / (2 sinh(beta omega / 2))."""
    return lambda beta: 0.5 / math.sinh(0.5 * beta * omega)


def ideal_harmonic_eos(N: int, statistics, beta: float, v_eff: float) -> Tuple[float, float]:
    """Exact (P, kappa_T) of N ideal particles in a 1D trap, with V_eff = 4 pi / omega."""
    def ln_z(v):
        return math.log(canonical_ideal_recursion(harmonic_z1(4 * math.pi / v), N, statistics, beta))

    h = 1e-3 * v_eff
    pressure = lambda v: richardson_derivative(ln_z, v, h) / beta
    slope = richardson_derivative(pressure, v_eff, h)
    return pressure(v_eff), -1.0 / (v_eff * slope)
