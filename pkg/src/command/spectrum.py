from __future__ import annotations

from typing import List, Optional

from src.model import Regime, SystemSpec
from src.spectral import counting_function, dos, shift_model, shifted_counting
from src.command.base import Command, energy_grid
from src.command.reference import oracle_levels
from src.utility.logger import get_logger_func

_warn, _info, _debug = get_logger_func('command')


class Counting(Command):
    """Smooth counting functions; optionally the shifted one and the exact staircase."""

    name = 'counting'

    def __init__(self, E=None, regime: str = 'direct', shifted: bool = False, oracle: bool = False,
                 base: Optional[str] = None):
        self.E = energy_grid(E)
        self.regime = Regime.parse(regime)
        self.shifted = shifted
        self.oracle = oracle
        self.base = base
        self.model = None
        self.levels = None

    def prepare(self, spec: SystemSpec, node) -> None:
        if self.shifted:
            self.model = shift_model(spec.N, spec.d, spec.statistics, spec.v_eff, self.base)
        if self.oracle:
            e_max = float(self.E.points()[-1])
            _info(f'Building exact levels up to E={e_max}')
            self.levels = oracle_levels(spec, e_max)

    def columns(self, spec: SystemSpec, node) -> List[str]:
        columns = ['E', 'N_nonint', 'N_qce']
        if self.shifted:
            columns.append('N_shift')
        if self.oracle:
            columns.append('staircase')
        return columns

    def tasks(self, spec: SystemSpec, node):
        return list(self.E.points())

    def evaluate(self, spec: SystemSpec, node, E, acc):
        row = [E, counting_function(spec.with_alpha(0.0), E, acc=acc), counting_function(spec, E, self.regime, acc)]
        if self.shifted:
            row.append(shifted_counting(self.model, spec.coupling(), E, acc))
        if self.oracle:
            row.append(self.levels.staircase(E))
        return [row]


class Dos(Command):
    """Smooth density of states with and without the interaction."""

    name = 'dos'

    def __init__(self, E=None, regime: str = 'direct'):
        self.E = energy_grid(E)
        self.regime = Regime.parse(regime)

    def columns(self, spec: SystemSpec, node) -> List[str]:
        return ['E', 'rho_nonint', 'rho_qce']

    def tasks(self, spec: SystemSpec, node):
        return list(self.E.points())

    def evaluate(self, spec: SystemSpec, node, E, acc):
        return [[E, dos(spec.with_alpha(0.0), E, acc=acc), dos(spec, E, self.regime, acc)]]
