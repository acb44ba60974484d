from __future__ import annotations

import math
from typing import List, Optional

from src.model import Regime, SystemSpec
from src.partition import InteractingCoefficients
from src.spectral import shift_model
from src.command.base import Command, GridSpec, energy_grid, system_dimension


class ZCoeffs(Command):
    """z_l and Delta_1 z_l(s) for l = 1..N."""

    name = 'zcoeffs'

    def __init__(self, regime: str = 'direct', s=None):
        self.regime = Regime.parse(regime)
        self.s = GridSpec.parse(s)

    def columns(self, spec: SystemSpec, node) -> List[str]:
        return ['s', 'l', 'z', 'z_exact', 'dz', 'w']

    def tasks(self, spec: SystemSpec, node):
        return [0.0] if self.s is None else list(self.s.points())

    def evaluate(self, spec: SystemSpec, node, s, acc):
        coeffs = InteractingCoefficients(spec.N, system_dimension(node, spec), spec.statistics, self.regime)
        base = coeffs.base
        rows = []
        for l in range(1, spec.N + 1):
            z = base.coefficient(l)
            exact = '' if base.exact is None else str(base.exact[l])
            dz = coeffs.delta_z(l, s, acc)
            rows.append([s, l, z, exact, dz, z + dz])
        return rows


class Shift(Command):
    """Shift fraction chi(E/alpha), full shift dE_inf(E) and applied shift on an energy grid."""

    name = 'shift'

    def __init__(self, E=None, base: Optional[str] = None):
        self.E = energy_grid(E)
        self.base = base
        self.model = None

    def prepare(self, spec: SystemSpec, node) -> None:
        self.model = shift_model(spec.N, system_dimension(node, spec), spec.statistics, spec.v_eff, self.base)

    def columns(self, spec: SystemSpec, node) -> List[str]:
        return ['E', 'eps', 'chi', 'delta_e_inf', 'delta_e']

    def tasks(self, spec: SystemSpec, node):
        return list(self.E.points())

    def evaluate(self, spec: SystemSpec, node, E, acc):
        alpha = spec.coupling()
        eps = E / alpha if alpha > 0 else math.inf
        chi = self.model.chi(eps, acc) if alpha > 0 else 0.0
        return [[E, eps, chi, self.model.delta_e_inf(E), self.model.delta_e(E, alpha, acc)]]

    def meta(self):
        return {'a_tilde': self.model.a_tilde,
                'a_tilde_exact': None if self.model.a_tilde_exact is None else str(self.model.a_tilde_exact)}
