"""Selects the exact oracle that applies to a configured system."""
from __future__ import annotations

import math
from typing import Tuple

import numpy as np

from src.errors import DomainError
from src.model import Statistics, SystemSpec, ThermalPoint
from src.model.confinement import HARMONIC, RING
from src.oracles import (LevelList, canonical_ideal_recursion, canonical_partition_from_levels,
                         canonical_pressure_from_levels, harmonic_z1, ideal_harmonic_eos, lieb_liniger_levels,
                         lowest_two_levels, two_body_harmonic_levels)
from src.oracles.bethe import MAX_BETHE_N

# e^-32 keeps the level-sum completeness guard satisfied
_BOLTZMANN_SPAN = 32.0


def _require_single_bose(spec: SystemSpec):
    if not spec.is_single or spec.statistics is not Statistics.BOSE or spec.only.mass_ratio != 1.0:
        raise DomainError('Exact oracles cover one species of reference-mass bosons.')


def ring_single_particle_levels(length: float, e_max: float) -> LevelList:
    n_max = int(math.floor(length * math.sqrt(e_max) / (2 * math.pi)))
    n = np.arange(-n_max, n_max + 1)
    return LevelList.from_energies((2 * math.pi * n / length) ** 2, e_max, 'analytic')


def oracle_levels(spec: SystemSpec, e_max: float) -> LevelList:
    """Complete interacting spectrum below e_max: two-body trap or Bethe ring."""
    _require_single_bose(spec)
    conf, alpha = spec.confinement, spec.coupling()
    if conf.shape == HARMONIC and conf.D == 1 and spec.N == 2:
        return two_body_harmonic_levels(alpha, e_max, conf.omega)
    if conf.shape == RING and 1 <= spec.N <= MAX_BETHE_N and alpha > 0:
        return lieb_liniger_levels(spec.N, conf.length, alpha, e_max)
    raise DomainError(f'No exact spectrum for N={spec.N} in a {conf.shape} confinement at alpha={alpha}.')


def oracle_partition(spec: SystemSpec, tp: ThermalPoint) -> float:
    _require_single_bose(spec)
    conf, alpha = spec.confinement, spec.coupling()
    if alpha == 0:
        if conf.shape == HARMONIC and conf.D == 1:
            return canonical_ideal_recursion(harmonic_z1(conf.omega), spec.N, spec.statistics, tp.beta)
        if conf.shape == RING:
            levels = ring_single_particle_levels(conf.length, _BOLTZMANN_SPAN * tp.kT)
            return canonical_ideal_recursion(levels, spec.N, spec.statistics, tp.beta)
    e_max = _ground_level(spec) + _BOLTZMANN_SPAN * tp.kT
    return canonical_partition_from_levels(oracle_levels(spec, e_max), tp.beta)


def oracle_eos(spec: SystemSpec, tp: ThermalPoint) -> Tuple[float, float]:
    """(P, kappa_T); kappa is nan where only the pressure is available exactly."""
    _require_single_bose(spec)
    conf, alpha = spec.confinement, spec.coupling()
    if alpha == 0 and conf.shape == HARMONIC and conf.D == 1:
        return ideal_harmonic_eos(spec.N, spec.statistics, tp.beta, spec.v_eff)
    if conf.shape == RING and alpha > 0:
        e_max = _ground_level(spec) + _BOLTZMANN_SPAN * tp.kT
        return canonical_pressure_from_levels(oracle_levels(spec, e_max), tp.beta), math.nan
    raise DomainError(f'No exact equation of state for N={spec.N} in a {conf.shape} confinement at alpha={alpha}.')


def _ground_level(spec: SystemSpec) -> float:
    conf = spec.confinement
    if conf.shape == HARMONIC:
        # free-fermion ground level bounds the repulsive-boson one from above
        return spec.N ** 2 * conf.omega / 2
    return lowest_two_levels(spec.N, conf.length, spec.coupling())[0] if spec.N > 1 else 0.0
