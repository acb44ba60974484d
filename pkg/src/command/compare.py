from __future__ import annotations

from typing import List

from src.clusters import ClusterGeometry, a_cluster
from src.errors import DomainError
from src.model import SystemSpec
from src.oracles import amplitude_quadrature
from src.oracles.amplitude import MAX_CYCLE_TOTAL
from src.command.base import Command, GridSpec


class OracleCompare(Command):
    """Closed-form cluster amplitudes against the raw propagator quadrature for all n1 <= n2, n1 + n2 <= n_max."""

    name = 'oracle_compare'

    def __init__(self, n_max: int = 8, s=None, method: str = 'reduced', rel_tol: float = 1e-8):
        if not 2 <= n_max <= MAX_CYCLE_TOTAL:
            raise DomainError(f'n_max must lie in 2..{MAX_CYCLE_TOTAL}, got {n_max=}')
        self.n_max = n_max
        self.s = GridSpec.parse(s) or GridSpec(start=1e-3, stop=1e3, num=25, spacing='log')
        self.method = method
        self.rel_tol = rel_tol

    def columns(self, spec: SystemSpec, node) -> List[str]:
        return ['n1', 'n2', 's', 'closed_form', 'quadrature', 'rel_residual']

    def tasks(self, spec: SystemSpec, node):
        pairs = [(n1, n2) for n in range(2, self.n_max + 1) for n1 in range(1, n // 2 + 1) for n2 in [n - n1]]
        return [(n1, n2, float(s)) for n1, n2 in pairs for s in self.s.points()]

    def evaluate(self, spec: SystemSpec, node, task, acc):
        n1, n2, s = task
        closed = a_cluster(ClusterGeometry(n1, n2), s, acc=acc)
        reference = amplitude_quadrature(n1, n2, s, self.rel_tol, self.method)
        residual = abs(closed - reference) / abs(reference) if reference else abs(closed)
        return [[n1, n2, s, closed, reference, residual]]
