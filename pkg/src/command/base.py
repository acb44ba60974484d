from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Optional, Sequence

import numpy as np
from omegaconf import DictConfig, ListConfig, OmegaConf

from src.errors import DomainError
from src.model import Confinement, Species, SystemSpec, ThermalPoint
from src.specfun import Accuracy
from src.utility.config import Config
from src.utility.logger import get_logger_func

_warn, _info, _debug = get_logger_func('command')

FORMATS = ('csv', 'json')


@dataclass
class GridSpec(Config):
    """A 1D parameter grid: explicit `values`, or `num` points from `start` to `stop`."""

    values: Optional[List[float]] = None
    start: Optional[float] = None
    stop: Optional[float] = None
    num: int = 0
    spacing: str = 'linear'

    def check(self):
        if self.spacing not in ('linear', 'log'):
            raise DomainError(f'Unknown grid spacing {self.spacing!r}')
        points = self.points()
        if points.size == 0:
            raise DomainError('Grid is empty.')
        if not np.all(np.isfinite(points)):
            raise DomainError(f'Grid contains non-finite values: {points.tolist()}')
        if np.any(np.diff(points) <= 0):
            raise DomainError(f'Grid must be strictly increasing: {points.tolist()}')

    def points(self) -> np.ndarray:
        if self.values is not None:
            return np.asarray(list(self.values), dtype=float)
        if self.start is None or self.stop is None or self.num < 1:
            return np.zeros(0)
        if self.spacing == 'log':
            if self.start <= 0:
                raise DomainError(f'Log grid needs a positive start, got {self.start=}')
            return np.geomspace(self.start, self.stop, self.num)
        return np.linspace(self.start, self.stop, self.num)

    @classmethod
    def parse(cls, node) -> Optional[GridSpec]:
        if node is None:
            return None
        if isinstance(node, GridSpec):
            return node
        if isinstance(node, (DictConfig, ListConfig)):
            node = OmegaConf.to_container(node, resolve=True)
        if isinstance(node, (list, tuple)):
            node = {'values': list(node)}
        return cls.build(node)


@dataclass
class RunConfig(Config):
    """Run-level options shared by every subcommand."""

    output_format: str = 'csv'
    output: Optional[str] = None
    n_jobs: int = 1
    rel_tol: float = 1e-12
    max_subdivisions: int = 200
    closed_form_condition: float = 1e4
    shift_base: str = 'nonint'
    dump_config: bool = False
    config_file: Optional[str] = None
    progress: bool = False

    def check(self):
        if self.output_format not in FORMATS:
            raise DomainError(f'Unknown output format {self.output_format!r}, expected one of {FORMATS}')
        if self.n_jobs < 1:
            raise DomainError(f'{self.n_jobs=} must be positive')
        if self.shift_base not in ('nonint', 'qce'):
            raise DomainError(f'Unknown shift base {self.shift_base!r}')
        Accuracy(self.rel_tol, self.max_subdivisions)

    @property
    def accuracy(self) -> Accuracy:
        return Accuracy(self.rel_tol, self.max_subdivisions)

    def output_path(self, command: str) -> str:
        return self.output or f'{command}.{self.output_format}'


def _plain(node):
    if isinstance(node, DictConfig):
        return OmegaConf.to_container(node, resolve=True)
    return node


def build_confinement(node: Dict[str, Any]) -> Confinement:
    node = dict(_plain(node))
    shape = node.pop('shape', 'ring')
    if shape == 'ring':
        return Confinement.ring(node['length'])
    if shape == 'harmonic':
        return Confinement.harmonic(node['omega'], node.get('D', 1), node.get('e0', 1.0))
    if shape == 'table':
        return Confinement.from_table(node['q'], node['v'], node['mu'], node.get('e0', 1.0))
    raise DomainError(f'Confinement {shape!r} can not be configured from a file; use ring, harmonic or table.')


def build_system(node) -> SystemSpec:
    """SystemSpec from the `system` config group."""
    node = _plain(node)
    confinement = build_confinement(node['confinement'])
    if node.get('species'):
        species = tuple(Species(s['count'], s.get('statistics', 'bose'), s.get('mass_ratio', 1.0))
                        for s in node['species'])
        alpha = node.get('alpha', 0.0)
        if node.get('couplings'):
            alpha = {tuple(int(i) for i in str(k).split(',')): v for k, v in node['couplings'].items()}
        return SystemSpec(species, confinement, alpha)
    return SystemSpec.single(node['N'], node.get('statistics', 'bose'), confinement, node.get('alpha', 0.0),
                             node.get('mass_ratio', 1.0))


def system_dimension(node, spec: SystemSpec) -> float:
    """`system.d` when given, else the effective dimension of the configured trap."""
    d = _plain(node).get('d')
    return spec.d if d is None else float(d)


ENERGY_GRID = GridSpec(start=0.5, stop=40.0, num=80)


def energy_grid(E) -> GridSpec:
    return GridSpec.parse(E) or ENERGY_GRID


def thermal_points(betas: Optional[GridSpec], temperatures: Optional[GridSpec]) -> List[ThermalPoint]:
    if (betas is None) == (temperatures is None):
        raise DomainError('Give exactly one of beta and kT grids.')
    if betas is not None:
        return [ThermalPoint(float(b)) for b in betas.points()]
    return [ThermalPoint(1.0 / float(t)) for t in temperatures.points()]


class Command:
    """One subcommand: a table of `columns`, one batch of rows per task.

    Tasks are independent and may run concurrently; rows are emitted in task order."""

    name = 'command'

    def prepare(self, spec: SystemSpec, node) -> None:
        """Work shared by all tasks, done once before they are dispatched."""

    def columns(self, spec: SystemSpec, node) -> List[str]:
        raise NotImplementedError

    def tasks(self, spec: SystemSpec, node) -> Sequence[Any]:
        raise NotImplementedError

    def evaluate(self, spec: SystemSpec, node, task, acc: Accuracy) -> Iterable[List[Any]]:
        raise NotImplementedError

    def meta(self) -> Dict[str, Any]:
        return {}


def finite_or_nan(value: Optional[float]) -> float:
    return math.nan if value is None else float(value)
