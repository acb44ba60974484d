from __future__ import annotations

import math
from typing import List, Optional, Sequence

from src.errors import CompletenessError, DomainError
from src.model import Regime, SystemSpec, ThermalPoint
from src.model.confinement import RING
from src.oracles import bethe_split_ansatz
from src.partition import species_coupling, split_partition, z0_partition, z1_partition
from src.thermo import eos_point, virial_pressure
from src.command.base import Command, GridSpec, finite_or_nan, thermal_points
from src.command.reference import oracle_eos, oracle_partition
from src.utility.logger import get_logger_func

_warn, _info, _debug = get_logger_func('command')

TEMPERATURE_GRID = GridSpec(start=0.5, stop=10.0, num=20)
VOLUME_GRID = GridSpec(start=1.0, stop=60.0, num=60)


def _split_provider(spec: SystemSpec):
    if spec.confinement.shape != RING or not spec.is_single or spec.coupling() <= 0:
        raise DomainError('The split ansatz takes E0/E1 from the Bethe solution: repulsive bosons on a ring.')
    return bethe_split_ansatz(spec.N, spec.coupling())


class Partition(Command):
    """Z_0 and Z_1 on a temperature grid, with optional split-ansatz and exact columns."""

    name = 'partition'

    def __init__(self, beta=None, kT=None, regime: str = 'direct', split: bool = False, oracle: bool = False):
        betas, temperatures = GridSpec.parse(beta), GridSpec.parse(kT)
        if betas is None and temperatures is None:
            temperatures = TEMPERATURE_GRID
        self.points = thermal_points(betas, temperatures)
        self.regime = Regime.parse(regime)
        self.split = split
        self.oracle = oracle
        self.ansatz = None

    def prepare(self, spec: SystemSpec, node) -> None:
        if self.split:
            self.ansatz = _split_provider(spec)

    def columns(self, spec: SystemSpec, node) -> List[str]:
        columns = ['beta', 's', 'x', 'Z0', 'Z1', 'ratio']
        if self.split:
            columns.append('Z_split')
        if self.oracle:
            columns.append('Z_oracle')
        return columns

    def tasks(self, spec: SystemSpec, node):
        return self.points

    def evaluate(self, spec: SystemSpec, node, tp: ThermalPoint, acc):
        z0 = z0_partition(spec, tp)
        z1 = z1_partition(spec, tp, self.regime, acc)
        row = [tp.beta, species_coupling(spec, tp), tp.x(spec), z0, z1, z1 / z0]
        if self.split:
            row.append(split_partition(spec, tp, self.ansatz, acc))
        if self.oracle:
            row.append(oracle_partition(spec, tp))
        return [row]


class EOS(Command):
    """Pressure and compressibility swept over V_eff at fixed temperature, or over kT at fixed V_eff.

    The temperature of a volume sweep is `beta`, `kT` or `beta_alpha` (thermal coupling s = beta alpha)."""

    name = 'eos'

    def __init__(self, sweep: str = 'V', V=None, kT_grid=None, beta: Optional[float] = None,
                 kT: Optional[float] = None, beta_alpha: Optional[float] = None, regime: str = 'direct',
                 split: bool = False, kappa: bool = True, virial: Sequence[int] = (), oracle: bool = False):
        if sweep not in ('V', 'T'):
            raise DomainError(f'Unknown sweep {sweep!r}, expected V or T')
        self.sweep = sweep
        self.V = GridSpec.parse(V) or VOLUME_GRID
        self.kT_grid = GridSpec.parse(kT_grid)
        if sweep == 'T' and self.kT_grid is None:
            raise DomainError('A temperature sweep needs kT_grid.')
        if sum(x is not None for x in (beta, kT, beta_alpha)) > 1:
            raise DomainError('Give at most one of beta, kT and beta_alpha.')
        self.beta, self.kT, self.beta_alpha = beta, kT, beta_alpha
        self.regime = Regime.parse(regime)
        self.split = split
        self.kappa = kappa
        self.virial = [int(v) for v in virial]
        self.oracle = oracle
        self.ansatz = None

    def _fixed_point(self, spec: SystemSpec) -> ThermalPoint:
        if self.beta is not None:
            return ThermalPoint(self.beta)
        if self.kT is not None:
            return ThermalPoint(1.0 / self.kT)
        if self.beta_alpha is not None:
            if not spec.coupling() > 0:
                raise DomainError('beta_alpha fixes the temperature only for alpha > 0.')
            return ThermalPoint(self.beta_alpha / spec.coupling())
        raise DomainError('A volume sweep needs one of beta, kT or beta_alpha.')

    def prepare(self, spec: SystemSpec, node) -> None:
        if self.split:
            self.ansatz = _split_provider(spec)

    def columns(self, spec: SystemSpec, node) -> List[str]:
        columns = ['v_eff', 'kT', 'x', 'P', 'kappa', 'breakdown']
        if self.split:
            columns += ['P_split', 'kappa_split']
        columns += [f'P_virial_{k}' for k in self.virial]
        if self.oracle:
            columns += ['P_oracle', 'kappa_oracle']
        return columns

    def tasks(self, spec: SystemSpec, node):
        if self.sweep == 'V':
            tp = self._fixed_point(spec)
            return [(float(v), tp) for v in self.V.points()]
        return [(spec.v_eff, ThermalPoint(1.0 / float(t))) for t in self.kT_grid.points()]

    def evaluate(self, spec: SystemSpec, node, task, acc):
        v_eff, tp = task
        system = spec.with_volume(v_eff)
        point = eos_point(system, tp, with_kappa=self.kappa, regime=self.regime, acc=acc)
        row = [v_eff, tp.kT, tp.x(system), point.P, finite_or_nan(point.kappa), point.breakdown]
        if self.split:
            split = eos_point(system, tp, use_split=True, ansatz=self.ansatz, with_kappa=self.kappa, acc=acc)
            row += [split.P, finite_or_nan(split.kappa)]
        row += [virial_pressure(system, tp, k) for k in self.virial]
        if self.oracle:
            try:
                row += list(oracle_eos(system, tp))
            except CompletenessError as e:
                _warn(f'Oracle unavailable at V_eff={v_eff}: {e.message}')
                row += [math.nan, math.nan]
        return [row]
