from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Dict, Optional, Tuple, Union

from src.errors import DomainError
from src.model.confinement import Confinement, effective_dimension, effective_volume


class Statistics(str, Enum):
    BOSE = 'bose'
    FERMI = 'fermi'

    @property
    def sign(self) -> int:
        return 1 if self is Statistics.BOSE else -1

    @classmethod
    def parse(cls, value) -> Statistics:
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise DomainError(f'Unknown statistics {value!r}, expected bose or fermi')


class Regime(str, Enum):
    DIRECT = 'direct'
    # strong coupling: bosons mapped onto an effective fermionic theory
    FERMIONIZED = 'fermionized'

    @classmethod
    def parse(cls, value) -> Regime:
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise DomainError(f'Unknown regime {value!r}, expected direct or fermionized')


@dataclass(frozen=True)
class Species:
    count: int
    statistics: Statistics = Statistics.BOSE
    mass_ratio: float = 1.0

    def __post_init__(self):
        if self.count < 1:
            raise DomainError(f'Species needs at least one particle, got {self.count=}')
        if not self.mass_ratio > 0:
            raise DomainError(f'Mass ratio must be positive, got {self.mass_ratio=}')
        object.__setattr__(self, 'statistics', Statistics.parse(self.statistics))


Coupling = Union[float, Dict[Tuple[int, int], float]]


@dataclass(frozen=True)
class SystemSpec:
    """Particles, their statistics and masses, the trap and the contact coupling alpha.

    alpha is an energy: the two-body interaction reads sqrt(8 alpha) delta(q) in units hbar^2/2m = 1.
    For several species it may be given per unordered species pair (i, j), i <= j."""

    species: Tuple[Species, ...]
    confinement: Confinement
    alpha: Coupling = 0.0
    units: str = 'hbar2_over_2m'

    def __post_init__(self):
        species = tuple(self.species)
        if not species:
            raise DomainError('At least one species is required.')
        object.__setattr__(self, 'species', species)
        if self.units != 'hbar2_over_2m':
            raise DomainError(f'Only the hbar^2/2m = 1 convention is supported, got {self.units!r}')
        if isinstance(self.alpha, dict):
            table = {}
            for (i, j), value in self.alpha.items():
                key = (min(i, j), max(i, j))
                if not 0 <= key[0] <= key[1] < len(species):
                    raise DomainError(f'Coupling refers to unknown species pair {key}')
                table[key] = float(value)
            if any(v < 0 for v in table.values()):
                raise DomainError('Attractive couplings are not supported.', alpha=table)
            object.__setattr__(self, 'alpha', table)
        elif not float(self.alpha) >= 0:
            raise DomainError(f'Coupling must be non-negative, got {self.alpha=}')
        masses = {s.mass_ratio for s in species}
        if len(masses) > 1 and not self.confinement.unconfined:
            raise DomainError('Unequal masses are supported on the ring only: a trap gives each '
                              'species its own effective volume.')

    @classmethod
    def single(cls, N: int, statistics='bose', confinement: Confinement = None,
               alpha: float = 0.0, mass_ratio: float = 1.0) -> SystemSpec:
        assert confinement is not None, 'confinement is required'
        return cls((Species(N, Statistics.parse(statistics), mass_ratio),), confinement, float(alpha))

    @property
    def N(self) -> int:
        return sum(s.count for s in self.species)

    @property
    def is_single(self) -> bool:
        return len(self.species) == 1

    @property
    def only(self) -> Species:
        if not self.is_single:
            raise DomainError(f'Single-species operation applied to {len(self.species)} species.')
        return self.species[0]

    @property
    def statistics(self) -> Statistics:
        return self.only.statistics

    @property
    def d(self) -> float:
        return effective_dimension(self.confinement)

    @property
    def v_eff(self) -> float:
        return effective_volume(self.confinement, self.species[0].mass_ratio)

    def coupling(self, i: int = 0, j: int = 0) -> float:
        if isinstance(self.alpha, dict):
            return self.alpha.get((min(i, j), max(i, j)), 0.0)
        return float(self.alpha)

    def with_volume(self, v_eff: float) -> SystemSpec:
        return replace(self, confinement=self.confinement.with_effective_volume(
            v_eff, self.species[0].mass_ratio))

    def with_alpha(self, alpha: Coupling) -> SystemSpec:
        return replace(self, alpha=alpha)


@dataclass(frozen=True)
class ThermalPoint:
    beta: float

    def __post_init__(self):
        if not self.beta > 0:
            raise DomainError(f'Inverse temperature must be positive, got {self.beta=}')

    @property
    def kT(self) -> float:
        return 1.0 / self.beta

    def lambda_T(self, mass_ratio: float = 1.0) -> float:
        return math.sqrt(4 * math.pi * self.beta / mass_ratio)

    def s(self, alpha: float) -> float:
        assert alpha >= 0, f'{alpha=}'
        return self.beta * alpha

    def x(self, spec: SystemSpec, species: int = 0, v_eff: Optional[float] = None) -> float:
        """Dimensionless size V_eff / lambda_T^d of one species."""
        mass_ratio = spec.species[species].mass_ratio
        if v_eff is None:
            v_eff = effective_volume(spec.confinement, mass_ratio)
        return v_eff / self.lambda_T(mass_ratio) ** spec.d


