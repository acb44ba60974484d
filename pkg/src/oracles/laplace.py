"""Numerical Laplace transforms in the bilateral convention used for the smooth spectrum.

Functions of energy vanish for eps <= 0, so the forward transform is the one-sided integral
and the inverse is taken along a Talbot contour."""
from __future__ import annotations

import math
from typing import Callable

import mpmath
from scipy.integrate import quad

from src.errors import ConvergenceError, DomainError

FORWARD_TOL = 1e-9
INVERSE_TOL = 1e-9
_DEGREES = (24, 48)


def numeric_laplace(fn: Callable[[float], float], s: float, rel_tol: float = FORWARD_TOL) -> float:
    """int_0^inf exp(-s eps) fn(eps) d eps, integrated in t = sqrt(eps) so eps^-1/2 edges stay regular."""
    if not s > 0:
        raise DomainError(f'Forward transform needs s > 0, got {s=}')
    value, error = quad(lambda t: 2 * t * math.exp(-s * t * t) * fn(t * t), 0, math.inf,
                        epsabs=0.0, epsrel=rel_tol, limit=400)
    if not math.isfinite(value) or error > 10 * rel_tol * abs(value):
        raise ConvergenceError(f'Forward Laplace quadrature did not converge at {s=}',
                               achieved=error / abs(value) if value else math.inf, target=rel_tol)
    return value


def numeric_inverse_laplace(fn: Callable, eps: float, rel_tol: float = INVERSE_TOL, dps: int = 30) -> float:
    """Inverse transform at eps by the Talbot method, accepted once doubling the degree agrees.

    fn receives mpmath complex arguments."""
    if eps <= 0:
        return 0.0
    with mpmath.workdps(dps):
        coarse, fine = (mpmath.invertlaplace(fn, eps, method='talbot', degree=M) for M in _DEGREES)
        gap = abs(fine - coarse)
        if gap > rel_tol * abs(fine) and gap > rel_tol * 1e-3:
            raise ConvergenceError(f'Talbot inversion not converged at {eps=}',
                                   achieved=float(gap / abs(fine)) if fine else math.inf, target=rel_tol)
        return float(mpmath.re(fine))
