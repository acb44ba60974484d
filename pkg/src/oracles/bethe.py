"""Lieb-Liniger bosons on a ring of length L.

With hbar^2 / 2m = 1 the pair interaction sqrt(8 alpha) delta(x) is the standard 2 c delta(x)
at c = sqrt(2 alpha). Rapidities solve

    k_j L = 2 pi I_j - sum_l 2 atan((k_j - k_l) / c),

which is the stationarity condition of the convex Yang-Yang action, so every set of strictly
increasing quantum numbers has exactly one solution and E = sum k_j^2."""
from __future__ import annotations

import itertools
import math
from functools import lru_cache
from typing import Dict, Iterator, List, Sequence, Tuple

import numpy as np
from scipy import linalg
from scipy.optimize import minimize, root

from src.errors import ConvergenceError, DomainError
from src.oracles.levels import LevelList, cached_levels
from src.partition import SplitAnsatz
from src.utility.logger import get_logger_func

_warn, _info, _debug = get_logger_func('oracles')

MAX_BETHE_N = 4
_RESIDUAL_TOL = 1e-11


def ll_coupling(alpha: float) -> float:
    return math.sqrt(2 * alpha)


def quantum_numbers(n: Sequence[int]) -> Tuple[float, ...]:
    """Bethe numbers I_j = n_j + (2j - N - 1) / 2 of the free-boson occupation n (non-decreasing)."""
    N = len(n)
    return tuple(n_j + (2 * j - N + 1) / 2 for j, n_j in enumerate(n))


def _residual(k, I, L, c):
    diff = k[:, None] - k[None, :]
    return k * L + 2 * np.arctan(diff / c).sum(axis=1) - 2 * math.pi * np.asarray(I)


def _jacobian(k, L, c):
    diff = k[:, None] - k[None, :]
    kernel = 2 * c / (c * c + diff * diff)
    np.fill_diagonal(kernel, 0.0)
    return np.diag(L + kernel.sum(axis=1)) - kernel


def _yang_yang(k, I, L, c):
    diff = k[:, None] - k[None, :]
    pair = 2 * diff * np.arctan(diff / c) - c * np.log1p((diff / c) ** 2)
    return 0.5 * L * np.dot(k, k) - 2 * math.pi * np.dot(I, k) + 0.5 * pair.sum()


def _worst(k, I, L, c) -> float:
    return float(np.max(np.abs(_residual(k, I, L, c))))


def _newton_polish(k, I, L, c, steps: int = 20):
    """Plain Newton steps from a point inside the convergence basin, kept while the residual drops."""
    best, best_res = k, _worst(k, I, L, c)
    for _ in range(steps):
        k = k - linalg.solve(_jacobian(k, L, c), _residual(k, I, L, c), assume_a='pos')
        res = _worst(k, I, L, c)
        if not res < best_res:
            break
        best, best_res = k, res
    return best, best_res


def bethe_rapidities(I: Sequence[float], L: float, c: float) -> np.ndarray:
    """Newton solve of the Bethe equations for one set of quantum numbers.

    Acceptance goes by the residual; hybr flags failure at converged roots once xtol
    is below machine resolution."""
    I = np.asarray(I, dtype=float)
    if np.any(np.diff(I) <= 0):
        raise DomainError(f'Bethe quantum numbers must be strictly increasing, got {tuple(I)}')
    k0 = 2 * math.pi * I / L
    if math.isinf(c):
        return k0
    tol = _RESIDUAL_TOL * max(1.0, L)
    sol = root(lambda k: (_residual(k, I, L, c), _jacobian(k, L, c)), k0, jac=True, method='hybr',
               options={'xtol': 1e-14})
    k, worst = _newton_polish(sol.x, I, L, c)
    if worst > tol:
        # trust-region Newton on the convex action
        sol = minimize(_yang_yang, k0, args=(I, L, c), method='trust-exact',
                       jac=lambda k, *a: _residual(k, I, L, c), hess=lambda k, *a: _jacobian(k, L, c),
                       options={'gtol': 1e-13})
        fallback, fallback_worst = _newton_polish(sol.x, I, L, c)
        if fallback_worst < worst:
            k, worst = fallback, fallback_worst
    if worst > tol:
        raise ConvergenceError(f'Bethe equations did not converge for I={tuple(I)}', achieved=worst,
                               target=tol, quantum_numbers=tuple(I))
    return np.sort(k)


def energy_slope(k: np.ndarray, L: float, c: float) -> float:
    """dE/dL from differentiating the Bethe equations: J dk/dL = -k."""
    if math.isinf(c):
        return -2 * float(np.dot(k, k)) / L
    dk = linalg.solve(_jacobian(k, L, c), -k, assume_a='pos')
    return 2 * float(np.dot(k, dk))


def occupations(N: int, L: float, e_max: float) -> Iterator[Tuple[int, ...]]:
    """Non-decreasing free-boson occupations with sum (2 pi n / L)^2 <= e_max.

    Repulsion only raises a level above its free-boson value, so these cover every Bethe
    state below e_max."""
    unit = (2 * math.pi / L) ** 2
    n_max = int(math.floor(math.sqrt(e_max / unit)))
    for n in itertools.combinations_with_replacement(range(-n_max, n_max + 1), N):
        if unit * sum(m * m for m in n) <= e_max * (1 + 1e-12):
            yield n


def lieb_liniger_levels(N: int, L: float, alpha: float, e_max: float, with_slopes: bool = True) -> LevelList:
    if not 1 <= N <= MAX_BETHE_N:
        raise DomainError(f'Bethe oracle supports 1 <= N <= {MAX_BETHE_N}, got {N=}')
    if not alpha > 0:
        raise DomainError(f'Bethe oracle needs a repulsive coupling, got {alpha=}')
    if L <= 0:
        raise DomainError(f'Ring length must be positive, got {L=}')
    c = ll_coupling(alpha)

    def build():
        energies, slopes = [], []
        seen = set()
        for n in occupations(N, L, e_max):
            I = quantum_numbers(n)
            assert I not in seen
            seen.add(I)
            k = bethe_rapidities(I, L, c)
            E = float(np.dot(k, k))
            if E <= e_max:
                energies.append(E)
                slopes.append(energy_slope(k, L, c) if with_slopes else 0.0)
        _debug(f'Bethe enumeration {N=} {L=} {alpha=}: {len(seen)} sets, {len(energies)} below {e_max}')
        return LevelList.from_energies(energies, e_max, 'bethe', slopes if with_slopes else None, tol=1e-10)

    params = {'N': N, 'L': L, 'alpha': alpha, 'e_max': e_max, 'slopes': with_slopes}
    return cached_levels('lieb_liniger', params, build)


@lru_cache(maxsize=4096)
def lowest_two_levels(N: int, L: float, alpha: float) -> Tuple[float, float]:
    """Ground level and first distinct excitation of the ring."""
    c = ll_coupling(alpha)
    candidates = [n for n in itertools.combinations_with_replacement(range(-2, 3), N) if sum(m * m for m in n) <= 2]
    energies = sorted({round(float(np.sum(bethe_rapidities(quantum_numbers(n), L, c) ** 2)), 12)
                       for n in candidates})
    return energies[0], energies[1]


def bethe_split_ansatz(N: int, alpha: float) -> SplitAnsatz:
    """E0, E1 of the N-boson ring as functions of V_eff = L."""
    if not 2 <= N <= MAX_BETHE_N:
        raise DomainError(f'Bethe split ansatz supports 2 <= N <= {MAX_BETHE_N}, got {N=}')
    return SplitAnsatz(lambda v: lowest_two_levels(N, float(v), alpha)[0],
                       lambda v: lowest_two_levels(N, float(v), alpha)[1], name=f'bethe_N{N}')


def plane_wave_ground_energy(N: int, L: float, alpha: float, m_max: int) -> float:
    """Lowest zero-momentum eigenvalue of the ring Hamiltonian in a truncated plane-wave basis.

    The distinguishable-particle ground state is nodeless and hence symmetric, so it is the
    bosonic ground state."""
    if not 2 <= N <= 3:
        raise DomainError(f'Plane-wave diagonalization is set up for N = 2 or 3, got {N=}')
    c = ll_coupling(alpha)
    states: List[Tuple[int, ...]] = []
    for head in itertools.product(range(-m_max, m_max + 1), repeat=N - 1):
        last = -sum(head)
        if abs(last) <= m_max:
            states.append(head + (last,))
    index: Dict[Tuple[int, ...], int] = {m: i for i, m in enumerate(states)}
    H = np.diag([(2 * math.pi / L) ** 2 * sum(x * x for x in m) for m in states])
    for col, m in enumerate(states):
        for i, j in itertools.combinations(range(N), 2):
            pair = m[i] + m[j]
            for mi in range(-m_max, m_max + 1):
                target = list(m)
                target[i], target[j] = mi, pair - mi
                row = index.get(tuple(target))
                if row is not None:
                    H[row, col] += 2 * c / L
    return float(linalg.eigh(H, eigvals_only=True, subset_by_index=[0, 0])[0])
