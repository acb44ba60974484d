from __future__ import annotations

import hashlib
import json
import math
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, Iterable, Optional, Tuple

import numpy as np

from src.errors import DomainError
from src.utility.logger import get_logger_func

_warn, _info, _debug = get_logger_func('oracles')

ORACLE_VERSION = '3'
CACHE_ENV = 'QCE1D_CACHE_DIR'
PROVENANCES = ('diagonalization', 'bethe', 'analytic')


@dataclass(frozen=True)
class LevelList:
    """Exact many-body levels below e_max, complete up to that bound.

    slopes, when present, hold dE/dV_eff per level (used for exact pressures)."""

    energies: Tuple[float, ...]
    degeneracies: Tuple[int, ...]
    e_max: float
    provenance: str
    slopes: Optional[Tuple[float, ...]] = None

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise DomainError(f'Unknown provenance {self.provenance!r}')
        if len(self.energies) != len(self.degeneracies):
            raise DomainError('energies and degeneracies differ in length')
        if self.slopes is not None and len(self.slopes) != len(self.energies):
            raise DomainError('slopes and energies differ in length')
        if any(b < a for a, b in zip(self.energies, self.energies[1:])):
            raise DomainError('Levels must be sorted ascending.')
        if any(g < 1 for g in self.degeneracies):
            raise DomainError('Degeneracies must be positive.')
        if self.energies and self.energies[-1] > self.e_max:
            raise DomainError(f'Level {self.energies[-1]} above the completeness bound {self.e_max}')

    @classmethod
    def from_energies(cls, energies: Iterable[float], e_max: float, provenance: str,
                      slopes: Optional[Iterable[float]] = None, tol: float = 1e-9) -> LevelList:
        """Sort, drop levels above e_max and merge coincident energies into degeneracies."""
        energies = np.asarray(list(energies), dtype=float)
        slopes_arr = None if slopes is None else np.asarray(list(slopes), dtype=float)
        order = np.argsort(energies, kind='stable')
        merged_e, merged_g, merged_s = [], [], []
        for idx in order:
            e = energies[idx]
            if e > e_max:
                continue
            if merged_e and abs(e - merged_e[-1]) <= tol * max(1.0, abs(e)):
                merged_g[-1] += 1
                continue
            merged_e.append(float(e))
            merged_g.append(1)
            if slopes_arr is not None:
                merged_s.append(float(slopes_arr[idx]))
        return cls(tuple(merged_e), tuple(merged_g), float(e_max), provenance,
                   tuple(merged_s) if slopes_arr is not None else None)

    def __len__(self):
        return len(self.energies)

    def expanded(self) -> np.ndarray:
        """Energies repeated by degeneracy."""
        return np.repeat(np.asarray(self.energies), np.asarray(self.degeneracies))

    def staircase(self, E: float) -> int:
        """Number of states with energy <= E."""
        idx = np.searchsorted(np.asarray(self.energies), E, side='right')
        return int(np.sum(np.asarray(self.degeneracies)[:idx]))

    def staircase_mid(self, E: float) -> float:
        """Staircase averaged across a step located exactly at E."""
        below = np.searchsorted(np.asarray(self.energies), E, side='left')
        g = np.asarray(self.degeneracies)
        return float(np.sum(g[:below])) + 0.5 * (self.staircase(E) - float(np.sum(g[:below])))

    def save(self, path) -> None:
        columns = [np.asarray(self.energies), np.asarray(self.degeneracies, dtype=float)]
        if self.slopes is not None:
            columns.append(np.asarray(self.slopes))
        header = json.dumps({'e_max': self.e_max, 'provenance': self.provenance,
                             'version': ORACLE_VERSION, 'slopes': self.slopes is not None})
        np.savetxt(path, np.column_stack(columns) if len(self) else np.zeros((0, len(columns))),
                   fmt='%.17g', header=header)

    @classmethod
    def load(cls, path) -> LevelList:
        with open(path) as f:
            meta = json.loads(f.readline().lstrip('#').strip())
        data = np.loadtxt(path, ndmin=2)
        slopes = tuple(data[:, 2]) if meta['slopes'] and len(data) else (() if meta['slopes'] else None)
        return cls(tuple(map(float, data[:, 0])) if len(data) else (),
                   tuple(int(round(g)) for g in data[:, 1]) if len(data) else (),
                   float(meta['e_max']), meta['provenance'], slopes)


def _cache_file(tag: str, params: Dict) -> Optional[Path]:
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    key = json.dumps({'tag': tag, 'version': ORACLE_VERSION, **params}, sort_keys=True)
    digest = hashlib.sha1(key.encode()).hexdigest()[:20]
    return Path(root) / f'{tag}-{digest}.txt'


def cached_levels(tag: str, params: Dict, builder: Callable[[], LevelList]) -> LevelList:
    """Level list from the cache directory named by QCE1D_CACHE_DIR, built and stored on a miss."""
    path = _cache_file(tag, params)
    if path is not None and path.exists():
        _debug(f'Level cache hit: {path}')
        return LevelList.load(path)
    levels = builder()
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix('.tmp')
        levels.save(tmp)
        os.replace(tmp, path)
    return levels
