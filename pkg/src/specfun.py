"""Scaled complementary error function, Owen's T and the interaction kernel F.

F(nu, s) = exp(c s) int_0^inf dz exp(-(z - nu sqrt(s))^2) erfc(sqrt(s) + nu z),  c = 1 + nu^2,

is evaluated as (sqrt(pi)/2) * S with the bracket form

S = erfcx(sqrt(c s)) - erfcx(nu sqrt(s)) erfcx(sqrt(s)) + (2/pi) int_nu^inf exp(-s (x^2 - nu^2)) / (1 + x^2) dx,

which carries no raw exponential prefactor."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special
from scipy.integrate import quad

import src
from src.errors import ConvergenceError, DomainError
from src.utility.config import Config

SQRT_PI = math.sqrt(math.pi)
# smallest relative tolerance QUADPACK accepts with epsabs = 0
_QUAD_FLOOR = 50 * np.finfo(float).eps
# exp(-42) < 1e-18
_TAIL_EXPONENT = 42.0
# tail integrals reaching further than this are left to the infinite-range rule
_FINITE_TAIL_LIMIT = 1e3


@dataclass
class Accuracy(Config):
    rel_tol: float = 1e-12
    max_subdivisions: int = 200

    def __post_init__(self):
        self.check()

    def check(self):
        if not 1e-15 < self.rel_tol < 1e-3:
            raise DomainError(f'Target accuracy must lie in (1e-15, 1e-3), got {self.rel_tol=}')
        if self.max_subdivisions < 1:
            raise DomainError(f'{self.max_subdivisions=}')

    @classmethod
    def default(cls) -> Accuracy:
        return cls(src.g_cfg.rel_tol, src.g_cfg.max_subdivisions)

    @property
    def epsrel(self) -> float:
        return max(self.rel_tol, _QUAD_FLOOR)


def integrate(func, a, b, acc: Accuracy = None, what: str = 'integral', epsabs: float = 0.0, **kwargs) -> float:
    """scipy quad with the error estimate checked against the requested accuracy."""
    acc = acc or Accuracy.default()
    value, error = quad(func, a, b, epsabs=epsabs, epsrel=acc.epsrel, limit=acc.max_subdivisions, **kwargs)
    if not math.isfinite(value):
        raise ConvergenceError(f'Quadrature of {what} returned {value}.', achieved=math.inf, target=acc.rel_tol)
    if error > 1e3 * acc.epsrel * abs(value) and error > epsabs:
        achieved = error / abs(value) if value else math.inf
        raise ConvergenceError(f'Quadrature of {what} did not converge.', achieved=achieved, target=acc.rel_tol)
    return value


def erfcx(x):
    """exp(x^2) erfc(x) without overflow."""
    return special.erfcx(x)


def owen_t(h: float, a: float, acc: Accuracy = None) -> float:
    """T(h, a) = 1/(2 pi) int_0^a exp(-h^2 (1 + t^2) / 2) / (1 + t^2) dt by adaptive quadrature."""
    if a < 0:
        return -owen_t(h, -a, acc)
    if a == 0:
        return 0.0
    half_h2 = 0.5 * h * h

    def integrand(t):
        u = 1.0 + t * t
        return math.exp(-half_h2 * u) / u

    if math.isinf(a):
        return 0.25 * special.erfc(abs(h) / math.sqrt(2))
    return integrate(integrand, 0.0, a, acc, what='Owen T', epsabs=1e-300) / (2 * math.pi)


def f_tail(nu: float, s: float, acc: Accuracy = None) -> float:
    """(2/pi) int_nu^inf exp(-s (x^2 - nu^2)) / (1 + x^2) dx with x = nu + t."""
    if s == 0:
        return 1.0 - 2 / math.pi * math.atan(nu)

    def integrand(t):
        x = nu + t
        return math.exp(-s * t * (2 * nu + t)) / (1.0 + x * x)

    # beyond t_max the integrand is below exp(-42) of its value at the onset
    t_max = -nu + math.sqrt(nu * nu + _TAIL_EXPONENT / s)
    if t_max > _FINITE_TAIL_LIMIT:
        value = integrate(integrand, 0.0, np.inf, acc, what='F tail')
    else:
        value = integrate(integrand, 0.0, t_max, acc, what='F tail')
    return 2 / math.pi * value


def f_stable(nu: float, s: float, acc: Accuracy = None) -> float:
    """The bracket S = (2/sqrt(pi)) F."""
    if nu < 0 or s < 0:
        raise DomainError(f'F needs nu >= 0 and s >= 0, got {nu=}, {s=}')
    c = 1.0 + nu * nu
    rs = math.sqrt(s)
    bracket = erfcx(math.sqrt(c * s)) - erfcx(nu * rs) * erfcx(rs)
    return bracket + f_tail(nu, s, acc)


def _f_owen(nu: float, s: float, acc: Accuracy) -> float:
    c = 1.0 + nu * nu
    if nu == 0:
        return 0.5 * SQRT_PI * erfcx(math.sqrt(s))
    rs = math.sqrt(s)
    inner = special.erf(nu * rs) - special.erf(math.sqrt(c * s)) + 4 * owen_t(nu * math.sqrt(2 * s), 1 / nu, acc)
    return 0.5 * SQRT_PI * math.exp(c * s) * inner


def _f_naive(nu: float, s: float, acc: Accuracy) -> float:
    rs = math.sqrt(s)

    def integrand(z):
        return math.exp(-(z - nu * rs) ** 2) * special.erfc(rs + nu * z)

    return math.exp((1 + nu * nu) * s) * integrate(integrand, 0.0, np.inf, acc, what='F defining integral',
                                                   epsabs=1e-300)


def f_nu(nu: float, s: float, acc: Accuracy = None, method: str = 'stable') -> float:
    """F(nu, s); `owen` and `naive` evaluate the exponentially prefactored forms and are only
    usable while exp((1 + nu^2) s) is representable."""
    if nu < 0 or s < 0:
        raise DomainError(f'F needs nu >= 0 and s >= 0, got {nu=}, {s=}')
    acc = acc or Accuracy.default()
    if method == 'stable':
        return 0.5 * SQRT_PI * f_stable(nu, s, acc)
    if (1 + nu * nu) * s > 700:
        raise DomainError(f'{method} form of F overflows at {nu=}, {s=}; use the stable form')
    if method == 'owen':
        return _f_owen(nu, s, acc)
    if method == 'naive':
        return _f_naive(nu, s, acc)
    raise DomainError(f'Unknown method {method!r}')
