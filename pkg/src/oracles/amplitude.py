"""Reference values of two-cycle amplitudes from their integral representations.

Nothing here reuses the closed forms in src.clusters or src.specfun."""
from __future__ import annotations

import math
import warnings
from typing import Tuple

import mpmath
from scipy import special
from scipy.integrate import IntegrationWarning, quad

from src.errors import ConvergenceError, DomainError
from src.utility.logger import get_logger_func

_warn, _info, _debug = get_logger_func('oracles')

MAX_CYCLE_TOTAL = 12
_INNER_TOL = 1e-11
_OUTER_TOL = 1e-10
_OUTER_ABS = 1e-13


def _nu_bar(n1: int, n2: int) -> float:
    n = n1 + n2
    return math.sqrt((2 * n1 * n2 - n) / n)


def _check_geometry(n1: int, n2: int, s: float):
    if n1 < 1 or n2 < 1:
        raise DomainError(f'Cycle lengths must be positive, got {n1=}, {n2=}')
    if n1 + n2 > MAX_CYCLE_TOTAL:
        raise DomainError(f'Quadrature oracle supports n1 + n2 <= {MAX_CYCLE_TOTAL}, got {n1 + n2}')
    if s < 0:
        raise DomainError(f'Thermal coupling must be non-negative, got {s=}')


class _Quadrature:
    """Nested scipy quad that remembers the worst error of the inner levels.

    Errors are measured against max(|value|, 1); the inner integrands are of order one."""

    def __init__(self, tol: float):
        self.tol = tol
        self.worst = 0.0

    def __call__(self, func, a, b) -> float:
        value, error = quad(func, a, b, epsabs=self.tol, epsrel=self.tol, limit=400)
        self.worst = max(self.worst, error / max(abs(value), 1.0))
        return value


def _outer(func, a, b) -> Tuple[float, float]:
    return quad(func, a, b, epsabs=_OUTER_ABS, epsrel=_OUTER_TOL, limit=400)


def _u_integral(A: float, k: float) -> float:
    # int_0^inf exp(-k u - (A + u)^2 / 8) du
    return math.sqrt(2 * math.pi) * math.exp(-A * A / 8) * special.erfcx((A + 4 * k) / (2 * math.sqrt(2)))


def _reduced(nu: float, s: float) -> Tuple[float, float]:
    k = math.sqrt(s / 2)
    inner = _Quadrature(_INNER_TOL)

    def over_r(z):
        f = lambda r: _u_integral(abs(nu * z + r) + r, k)
        weight = math.exp(-z * z / 8)
        if z < 0 and nu > 0:
            kink = -nu * z
            return weight * (inner(f, 0, kink) + inner(f, kink, math.inf))
        return weight * inner(f, 0, math.inf)

    neg, neg_err = _outer(over_r, -math.inf, 0)
    pos, pos_err = _outer(over_r, 0, math.inf)
    total = neg + pos
    error = neg_err + pos_err + inner.worst * abs(total)
    return total, error


def _nested3d(nu: float, s: float) -> Tuple[float, float]:
    k = math.sqrt(s / 2)
    inner = _Quadrature(_INNER_TOL)
    middle = _Quadrature(_INNER_TOL)

    def over_u(r, z):
        A = abs(nu * z + r) + r
        return inner(lambda u: math.exp(-k * u - (A + u) ** 2 / 8), 0, math.inf)

    def over_r(z):
        f = lambda r: over_u(r, z)
        weight = math.exp(-z * z / 8)
        if z < 0 and nu > 0:
            kink = -nu * z
            return weight * (middle(f, 0, kink) + middle(f, kink, math.inf))
        return weight * middle(f, 0, math.inf)

    neg, neg_err = _outer(over_r, -math.inf, 0)
    pos, pos_err = _outer(over_r, 0, math.inf)
    total = neg + pos
    error = neg_err + pos_err + (inner.worst + middle.worst) * abs(total)
    return total, error


def amplitude_quadrature(n1: int, n2: int, s: float, rel_tol: float = 1e-8, method: str = 'reduced') -> float:
    """Dimensionless amplitude from the r, z, u propagator integral.

    ``method='nested3d'`` integrates all three variables adaptively; the default does the
    u integral in closed form (an erfcx) and the remaining two adaptively, which is orders
    of magnitude faster and agrees to the requested tolerance."""
    _check_geometry(n1, n2, s)
    if s == 0:
        return 0.0
    nu = _nu_bar(n1, n2)
    schemes = {'reduced': _reduced, 'nested3d': _nested3d}
    if method not in schemes:
        raise DomainError(f'Unknown quadrature method {method!r}')
    # roundoff warnings are judged by the returned error estimates below
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter('always', IntegrationWarning)
        total, error = schemes[method](nu, s)
    if caught:
        _debug(f'{len(caught)} quadrature warnings for ({n1}, {n2}) at {s=}')
    achieved = error / abs(total) if total else math.inf
    if achieved > rel_tol:
        raise ConvergenceError(f'Amplitude quadrature for ({n1}, {n2}) at {s=} missed the tolerance.',
                               achieved=achieved, target=rel_tol)
    return -math.sqrt(2 * s) / (4 * math.pi) * total


def _kernel_mp(nu, s):
    """Defining integral of the interaction kernel evaluated directly in high precision."""
    rs = mpmath.sqrt(s)
    f = lambda z: mpmath.exp((1 + nu ** 2) * s - (z - nu * rs) ** 2) * mpmath.erfc(rs + nu * z)
    return mpmath.quad(f, [0, nu * rs, mpmath.inf]) if nu * rs > 0 else mpmath.quad(f, [0, mpmath.inf])


def fermionized_amplitude_reference(n1: int, n2: int, s: float, dps: int = 40) -> float:
    """Effective-fermion amplitude assembled term by term from the defining kernel integral."""
    _check_geometry(n1, n2, s)
    with mpmath.workdps(dps):
        n = n1 + n2
        nu = mpmath.sqrt(mpmath.mpf(2 * n1 * n2 - n) / n)
        s = mpmath.mpf(s)
        c = 1 + nu ** 2
        rs = mpmath.sqrt(s)
        kernel = 2 / mpmath.sqrt(mpmath.pi) * _kernel_mp(nu, s)
        t1 = -2 / mpmath.pi * nu / c - 2 * nu ** 2 * rs / mpmath.sqrt(mpmath.pi * c)
        t2 = 2 / mpmath.sqrt(mpmath.pi) * nu * rs * mpmath.exp(s) * mpmath.erfc(rs)
        t3 = kernel
        t4 = 2 * nu ** 2 * s * kernel
        return float(t1 + t2 + t3 + t4)


def static_scatterer_correction(s: float, dps: int = 30) -> float:
    """Z - Z0 for one reference-mass particle scattering off a fixed contact barrier.

    Beth-Uhlenbeck sum over the even-channel phase shift delta(k) = -atan(g / 2k) with
    g = sqrt(8 s) in units beta = 1; the -1/2 is the Levinson term of the k -> 0 edge."""
    if s < 0:
        raise DomainError(f'Thermal coupling must be non-negative, got {s=}')
    if s == 0:
        return 0.0
    with mpmath.workdps(dps):
        g = mpmath.sqrt(8 * mpmath.mpf(s))
        slope = lambda k: (g / 2) / (k ** 2 + g ** 2 / 4) * mpmath.exp(-k ** 2)
        return float(mpmath.quad(slope, [0, g / 2, mpmath.inf]) / mpmath.pi - mpmath.mpf(1) / 2)
