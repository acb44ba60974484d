"""Two contact-interacting bosons in a harmonic trap.

The relative motion of the pair is, in units of the trap quantum omega, the oscillator
(-d^2/dx^2 + x^2) / 2 + gamma delta(x) with gamma = sqrt(2 alpha / omega). Odd relative
states do not feel the contact and are removed by Bose symmetry."""
from __future__ import annotations

import math
from typing import List, Sequence

import numpy as np
from scipy import linalg, special
from scipy.optimize import brentq

from src.errors import ConvergenceError, DomainError
from src.oracles.levels import LevelList, cached_levels
from src.utility.logger import get_logger_func

_warn, _info, _debug = get_logger_func('oracles')

DEFAULT_BASIS = 4096
# oscillator quanta
LEVEL_TOL = 1e-4
_EDGE = 1e-12


def relative_coupling(alpha: float, omega: float = 1.0) -> float:
    return math.sqrt(2 * alpha / omega)


def _even_levels_exact(gamma: float, n_levels: int) -> np.ndarray:
    """Roots of gamma / Gamma(3/4 - E/2) + 2 / Gamma(1/4 - E/2) = 0.

    The k-th root lies in [2k + 1/2, 2k + 3/2] and moves from the free to the fermionized
    end as gamma grows."""
    if math.isinf(gamma):
        return 2 * np.arange(n_levels) + 1.5
    condition = lambda E: gamma * special.rgamma(0.75 - E / 2) + 2 * special.rgamma(0.25 - E / 2)
    roots = []
    for k in range(n_levels):
        lo, hi = 2 * k + 0.5, 2 * k + 1.5
        roots.append(lo if gamma == 0 else brentq(condition, lo, hi, xtol=1e-14, maxiter=200))
    return np.asarray(roots)


def _basis(basis_size: int):
    j = np.arange(basis_size)
    # phi_2j(0)^2 = binom(2j, j) / (4^j sqrt(pi))
    weight = np.exp(special.gammaln(2 * j + 1) - 2 * special.gammaln(j + 1) - j * math.log(4)
                    - 0.5 * math.log(math.pi))
    return 2.0 * j + 0.5, weight


def truncated_levels_dense(gamma: float, basis_size: int) -> np.ndarray:
    """Eigenvalues of the contact Hamiltonian restricted to the lowest even oscillator states."""
    diagonal, weight = _basis(basis_size)
    phi = (-1.0) ** np.arange(basis_size) * np.sqrt(weight)
    return linalg.eigh(np.diag(diagonal) + gamma * np.outer(phi, phi), eigvals_only=True)


def truncated_levels(gamma: float, basis_size: int, n_levels: int) -> np.ndarray:
    """Same spectrum as truncated_levels_dense, from the secular equation of the rank-one update.

    1/gamma + sum_j phi_j^2 / (d_j - E) is increasing between neighbouring d_j, so every
    interval holds exactly one eigenvalue."""
    diagonal, weight = _basis(basis_size)
    if gamma == 0:
        return diagonal[:n_levels].copy()
    secular = lambda E: 1 / gamma + np.sum(weight / (diagonal - E))
    return np.asarray([brentq(secular, diagonal[k] + _EDGE, diagonal[k + 1] - _EDGE, xtol=1e-14, maxiter=300)
                       for k in range(n_levels)])


def _even_levels_extrapolated(gamma: float, n_levels: int, basis_size: int, tol: float) -> np.ndarray:
    """Truncated-basis levels, Richardson-extrapolated in K for K^-1/2 convergence."""
    if basis_size < 16 * n_levels:
        raise DomainError(f'{basis_size=} too small for {n_levels} relative levels')
    sizes = (basis_size // 4, basis_size, 4 * basis_size)
    raw = [truncated_levels(gamma, K, n_levels) for K in sizes]
    coarse = 2 * raw[1] - raw[0]
    fine = 2 * raw[2] - raw[1]
    trend = float(np.max(np.abs(fine - coarse)))
    if trend > tol:
        raise ConvergenceError(f'Basis extrapolation of the relative levels not converged at {gamma=}.',
                               achieved=trend, target=tol,
                               trend=[float(np.max(np.abs(r - fine))) for r in raw])
    return fine


def relative_even_levels(alpha: float, n_levels: int, omega: float = 1.0, method: str = 'exact',
                         basis_size: int = DEFAULT_BASIS, tol: float = LEVEL_TOL) -> np.ndarray:
    """Lowest even relative levels in units of omega."""
    if alpha < 0:
        raise DomainError(f'Repulsive or vanishing coupling required, got {alpha=}')
    gamma = relative_coupling(alpha, omega)
    if method == 'exact':
        return _even_levels_exact(gamma, n_levels)
    if method == 'diagonalization':
        if math.isinf(gamma):
            raise DomainError('Diagonalization needs a finite coupling.')
        return _even_levels_extrapolated(gamma, n_levels, basis_size, tol)
    raise DomainError(f'Unknown method {method!r}')


def _pair_levels(relative: Sequence[float], e_max: float) -> List[float]:
    out = []
    for e_rel in relative:
        n_cm = 0
        while n_cm + 0.5 + e_rel <= e_max:
            out.append(n_cm + 0.5 + e_rel)
            n_cm += 1
    return out


def two_body_harmonic_levels(alpha: float, e_max: float, omega: float = 1.0, method: str = 'exact',
                             basis_size: int = DEFAULT_BASIS) -> LevelList:
    """All two-boson levels (centre of mass times even relative motion) up to e_max."""
    quanta = e_max / omega
    if quanta < 1.0:
        raise DomainError(f'Two-body ground level lies at or above omega, got {e_max=}')
    n_levels = int(math.floor((quanta - 1.0) / 2)) + 1

    def build():
        relative = relative_even_levels(alpha, n_levels, omega, method, basis_size)
        _debug(f'Relative levels at {alpha=}: {relative[:4]}')
        provenance = 'diagonalization' if method == 'diagonalization' else 'analytic'
        return LevelList.from_energies(omega * np.asarray(_pair_levels(relative, quanta)), e_max, provenance,
                                       tol=1e-10)

    params = {'alpha': alpha, 'e_max': e_max, 'omega': omega, 'method': method, 'basis': basis_size}
    return cached_levels('harmonic2', params, build)


def harmonic_single_particle_levels(e_max: float, omega: float = 1.0) -> LevelList:
    """1D oscillator levels (n + 1/2) omega below e_max."""
    n = np.arange(int(math.floor(e_max / omega - 0.5)) + 1)
    return LevelList.from_energies((n + 0.5) * omega, e_max, 'analytic')
