"""Energy-domain counterpart of the first-order coefficients.

The smooth counting function is
    N(E) = sum_l [z_l / Gamma(l d/2 + 1) + g_l(E/alpha)] u^(l d/2),   u = E V_eff^(2/d) / (4 pi),
where eps^(L/2) g_l(eps), L = l d, is the inverse Laplace transform of dz_l(s) s^(-L/2-1).  The
g_l are assembled from b_j^(L)(eps) = eps^(-L/2) InvLaplace[s^(-L/2-1) a_j(s)](eps).

Closed forms exist for integer L.  They contain (1 + c/eps)^(L/2) times differences of O(1) terms,
so for small eps and for non-integer L the b's are evaluated as fractional integrals of the
inverse-transformed amplitudes instead."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import sympy
from scipy import special

import src
from src.clusters import ClusterGeometry
from src.combinatorics import nonint_coefficients
from src.errors import DomainError
from src.model import Regime, Statistics, SystemSpec
from src.specfun import Accuracy, SQRT_PI, integrate
from src.utility.fn import richardson_derivative
from src.utility.logger import get_logger_func, get_warn_once
from src.utility.registry import ImplGroup

_warn, _info, _debug = get_logger_func('spectral')
_warn_once = get_warn_once('spectral')

rgamma = special.rgamma


def _is_integer(L: float) -> bool:
    return abs(L - round(L)) < 1e-12


def _closed_form_ok(L: float, c: float, eps: float) -> bool:
    if not _is_integer(L):
        return False
    return L <= 0 or (1 + c / eps) ** (L / 2) <= src.g_cfg.closed_form_condition


def h_lambda(lam: float, eps: float) -> float:
    if eps <= 0:
        return 0.0
    return 2 / math.pi * math.atan(math.sqrt(eps)) if lam else 1.0


def t_lambda(lam: float, nu: float, eps: float) -> float:
    if eps <= 0:
        return 0.0
    c = 1 + nu * nu
    if lam:
        # atan(sqrt(1 + c/eps) / nu), continuous at nu = 0
        return 2 / math.pi * math.atan2(math.sqrt(1 + c / eps), nu)
    return 2 / math.pi * (math.atan(math.sqrt(eps / c)) + math.atan(math.sqrt(nu * nu / (1 + eps)))
                          - math.atan(nu))


def _lam(L: int) -> float:
    return 0.5 * (L % 2)


# >>> b1

def b1(l: float, nu: float, eps: float) -> float:
    if l <= -2:
        raise DomainError(f'b1 is defined for l > -2, got {l=}')
    if eps <= 0:
        return 0.0
    c = 1 + nu * nu
    return ((2 / math.pi * math.atan(nu) - 1) * rgamma(l / 2 + 1)
            + 2 * nu * nu / math.sqrt(math.pi * c) * rgamma(l / 2 + 0.5) / math.sqrt(eps))


def b1_fermionized(l: float, nu: float, eps: float) -> float:
    if l <= -2:
        raise DomainError(f'b1 is defined for l > -2, got {l=}')
    if eps <= 0:
        return 0.0
    c = 1 + nu * nu
    return (-2 / math.pi * nu / c * rgamma(l / 2 + 1)
            - 2 * nu * nu / math.sqrt(math.pi * c) * rgamma(l / 2 + 0.5) / math.sqrt(eps))


# >>> b2

def _b2_closed(L: int, nu: float, eps: float) -> float:
    lam = _lam(L)
    q = 1 + 1 / eps
    head = -2 * nu / SQRT_PI * q ** (L / 2 - 0.5) * rgamma(L / 2 + 0.5) / math.sqrt(eps) * h_lambda(lam, eps)
    tail = [math.gamma(L / 2 - k + 0.5) * rgamma(L / 2 - k + 1) * rgamma(L / 2 + 0.5) * q ** (k - 1) / eps
            for k in range(1, L // 2 + 1)]
    return head + 2 * nu / math.pi * math.fsum(tail)


def _b2_quad(L: float, nu: float, eps: float, acc: Accuracy = None) -> float:
    # kernel of exp(s) erfc(sqrt(s)) is 1 / (pi sqrt(t) (1 + t)); t = eps u
    value = integrate(lambda u: 1 / (1 + eps * u), 0.0, 1.0, acc, what='b2 kernel',
                      weight='alg', wvar=(-0.5, (L - 1) / 2))
    return -2 * nu / math.pi ** 1.5 * rgamma((L + 1) / 2) * value


def b2(l: float, nu: float, eps: float, acc: Accuracy = None) -> float:
    if l <= -1:
        raise DomainError(f'b2 is defined for l > -1, got {l=}')
    if eps <= 0 or nu == 0:
        return 0.0
    if _closed_form_ok(l, 1.0, eps):
        return _b2_closed(int(round(l)), nu, eps)
    return _b2_quad(l, nu, eps, acc)


# >>> b3

def _b3_closed(L: int, nu: float, eps: float) -> float:
    lam = _lam(L)
    c = 1 + nu * nu
    q = 1 + c / eps
    correction = []
    for k in range(1, math.ceil(L / 2) + 1):
        inner = 0.5 * SQRT_PI * _b2_closed(int(round(2 * (k - lam))), nu, eps) \
                + math.sqrt(c) * rgamma(k - lam + 0.5) / math.sqrt(eps)
        correction.append(math.gamma(k - lam) * q ** (lam - k) * inner)
    bracket = t_lambda(lam, nu, eps) - math.fsum(correction) / SQRT_PI
    return q ** (L / 2) * rgamma(L / 2 + 1) * bracket


def _b3_quad(L: float, nu: float, eps: float, acc: Accuracy = None) -> float:
    # kernel of the bracket S: (x + c)^-1 (sqrt(c) / (pi sqrt(x)) - nu / (pi sqrt(1 + x)))
    c = 1 + nu * nu
    first = integrate(lambda u: 1 / (eps * u + c), 0.0, 1.0, acc, what='b3 kernel',
                      weight='alg', wvar=(-0.5, L / 2))
    terms = [math.sqrt(c * eps) * first]
    if nu:
        second = integrate(lambda u: 1 / ((eps * u + c) * math.sqrt(1 + eps * u)), 0.0, 1.0, acc,
                           what='b3 kernel', weight='alg', wvar=(0.0, L / 2))
        terms.append(-nu * eps * second)
    return rgamma(L / 2 + 1) / math.pi * math.fsum(terms)


def b3(l: float, nu: float, eps: float, acc: Accuracy = None) -> float:
    if l <= -2:
        raise DomainError(f'b3 is defined for l >= -1, got {l=}')
    if eps <= 0:
        return 0.0
    if _closed_form_ok(l, 1 + nu * nu, eps) and l >= -1:
        return _b3_closed(int(round(l)), nu, eps)
    return _b3_quad(l, nu, eps, acc)


# >>> b4

def b4(l: float, nu: float, eps: float, acc: Accuracy = None) -> float:
    if l <= 0:
        raise DomainError(f'b4 is defined for l > 0, got {l=}')
    if eps <= 0 or nu == 0:
        return 0.0
    return -2 * nu * nu / eps * b3(l - 2, nu, eps, acc)


b_terms = ImplGroup('b_terms')


@b_terms.register(Regime.DIRECT)
def _direct_b(L, nu, eps, acc):
    return b1(L, nu, eps), b2(L, nu, eps, acc), b3(L, nu, eps, acc), b4(L, nu, eps, acc)


@b_terms.register(Regime.FERMIONIZED)
def _fermionized_b(L, nu, eps, acc):
    return b1_fermionized(L, nu, eps), -b2(L, nu, eps, acc), b3(L, nu, eps, acc), -b4(L, nu, eps, acc)


# >>> g_l and f_l

def _coefficient_statistics(statistics: Statistics, regime: Regime) -> Statistics:
    if regime is Regime.FERMIONIZED:
        if statistics is not Statistics.BOSE:
            raise DomainError('The fermionized regime maps bosons onto fermions; got fermions.')
        return Statistics.FERMI
    return statistics


def g_l(N: int, l: int, statistics, regime, eps: float, d: float = 1.0, acc: Accuracy = None) -> float:
    """Counting-function coefficient; g_N vanishes and so does every g for direct-regime fermions."""
    statistics, regime = Statistics.parse(statistics), Regime.parse(regime)
    if not 1 <= l <= N:
        raise DomainError(f'Coefficient index out of range: {l=}, {N=}')
    if eps <= 0 or (regime is Regime.DIRECT and statistics is Statistics.FERMI):
        return 0.0
    base = _coefficient_statistics(statistics, regime)
    L = l * d
    terms_of = b_terms.get(regime)
    terms = []
    for n in range(2, N - l + 2):
        z = nonint_coefficients(N - n, d, base).coefficient(l - 1)
        if z == 0.0:
            continue
        pair = []
        for n1 in range(1, n // 2 + 1):
            value = math.fsum(terms_of(L, ClusterGeometry(n1, n - n1).nu_bar, eps, acc))
            pair.append(value if 2 * n1 == n else 2 * value)
        terms.append(base.sign ** n * n ** (-d / 2) * z * math.fsum(pair))
    return math.fsum(terms)


def f_l(N: int, l: int, statistics, regime, eps: float, d: float = 1.0, acc: Accuracy = None) -> float:
    """DOS coefficient (l d / 2) g_l + eps g_l'."""
    if eps <= 0:
        return 0.0
    g = g_l(N, l, statistics, regime, eps, d, acc)
    slope = richardson_derivative(lambda e: g_l(N, l, statistics, regime, e, d, acc), eps, eps * 1e-4)
    return l * d / 2 * g + eps * slope


@dataclass(frozen=True)
class SpectralCoefficients:
    N: int
    d: float = 1.0
    statistics: Statistics = Statistics.BOSE
    regime: Regime = Regime.DIRECT

    @staticmethod
    def lam(l: int) -> float:
        return _lam(l)

    def base(self):
        return nonint_coefficients(self.N, self.d, _coefficient_statistics(self.statistics, self.regime))

    def c(self, l: int) -> float:
        return self.base().coefficient(l) * rgamma(l * self.d / 2 + 1)

    def g(self, l: int, eps: float, acc: Accuracy = None) -> float:
        return g_l(self.N, l, self.statistics, self.regime, eps, self.d, acc)

    def f(self, l: int, eps: float, acc: Accuracy = None) -> float:
        return f_l(self.N, l, self.statistics, self.regime, eps, self.d, acc)

    def counting(self, v_eff: float, alpha: float, E: float, acc: Accuracy = None) -> float:
        if E <= 0:
            return 0.0
        u = E * v_eff ** (2 / self.d) / (4 * math.pi)
        interacting = alpha > 0
        terms = []
        for l in range(1, self.N + 1):
            weight = self.c(l) + (self.g(l, E / alpha, acc) if interacting else 0.0)
            terms.append(weight * u ** (l * self.d / 2))
        return math.fsum(terms)

    def density(self, v_eff: float, alpha: float, E: float, acc: Accuracy = None) -> float:
        if E <= 0:
            return 0.0
        u = E * v_eff ** (2 / self.d) / (4 * math.pi)
        interacting = alpha > 0
        terms = []
        for l in range(1, self.N + 1):
            weight = l * self.d / 2 * self.c(l) + (self.f(l, E / alpha, acc) if interacting else 0.0)
            terms.append(weight * u ** (l * self.d / 2))
        return math.fsum(terms) / E


def spectral_coefficients(spec: SystemSpec, regime=Regime.DIRECT) -> SpectralCoefficients:
    return SpectralCoefficients(spec.N, spec.d, spec.statistics, Regime.parse(regime))


def counting_function(spec: SystemSpec, E: float, regime=Regime.DIRECT, acc: Accuracy = None) -> float:
    """Smooth number of many-body levels below E (zero for E <= 0)."""
    alpha = spec.coupling()
    regime = Regime.parse(regime)
    if alpha == 0 and regime is Regime.FERMIONIZED:
        _debug('alpha = 0: counting function falls back to the non-interacting form')
        regime = Regime.DIRECT
    count = spectral_coefficients(spec, regime).counting(spec.v_eff, alpha, E, acc)
    if count < 0:
        _warn_once(('counting', spec.N, spec.d, regime), f'Negative smooth counting function ({count:.6g}) at {E=} '
                                                         f'for N={spec.N}; first-order expansion breaks down here.')
    return count


def dos(spec: SystemSpec, E: float, regime=Regime.DIRECT, acc: Accuracy = None) -> float:
    alpha = spec.coupling()
    regime = Regime.parse(regime)
    if alpha == 0 and regime is Regime.FERMIONIZED:
        regime = Regime.DIRECT
    rho = spectral_coefficients(spec, regime).density(spec.v_eff, alpha, E, acc)
    if rho < 0:
        _warn_once((spec.N, spec.d, regime), f'Negative smooth DOS ({rho:.6g}) at {E=} for N={spec.N}; '
                                             f'first-order expansion breaks down here.')
    return rho


# >>> energy shift

def _exact_c(z_exact, l: int, half_d: sympy.Rational):
    return z_exact[l] / sympy.gamma(l * half_d + 1)


def _shift_constant(N: int, d: float, statistics: Statistics) -> Tuple[float, Optional[sympy.Expr]]:
    """a~ from c_(N-1) + N d/2 a~ c_N^((2/d - 1)/N) = -c_(N-1) in the variable c_N u^(N d/2)."""
    coeffs = nonint_coefficients(N, d, statistics)
    if coeffs.exact is not None:
        half_d = sympy.Rational(int(round(2 * d)), 4)
        d_exact = 2 * half_d
        c_n, c_m = _exact_c(coeffs.exact, N, half_d), _exact_c(coeffs.exact, N - 1, half_d)
        exponent = (2 / d_exact - 1) / N
        exact = sympy.simplify(4 * c_m / (N * d_exact * c_n ** (1 + exponent)))
        return float(exact), exact
    c_n = coeffs.coefficient(N) * rgamma(N * d / 2 + 1)
    c_m = coeffs.coefficient(N - 1) * rgamma((N - 1) * d / 2 + 1)
    exponent = (2 / d - 1) / N
    return 4 * c_m / (N * d * c_n ** (1 + exponent)), None


@dataclass(frozen=True)
class ShiftModel:
    """Counting function translated by dE(E) = chi(E/alpha) dE_inf(E).

    Energies are scaled as u = E V_eff^(2/d) / (4 pi); the full shift in that variable is
    du_inf = a~ (c_N u^(N d/2))^((2/d - 1)/N), a constant for d = 2."""

    N: int
    d: float
    statistics: Statistics
    a_tilde: float
    a_tilde_exact: Optional[sympy.Expr]
    v_eff: float = 1.0
    base: str = 'nonint'

    def __post_init__(self):
        if self.base not in ('nonint', 'qce'):
            raise DomainError(f'Unknown shift base {self.base!r}, expected nonint or qce')

    @property
    def coefficients(self) -> SpectralCoefficients:
        return SpectralCoefficients(self.N, self.d, self.statistics)

    def _u(self, E: float) -> float:
        return E * self.v_eff ** (2 / self.d) / (4 * math.pi)

    def chi(self, eps: float, acc: Accuracy = None) -> float:
        """Fraction of the full shift reached at eps = E / alpha; 1 at eps -> 0+, 0 at eps -> inf."""
        if eps <= 0:
            return 1.0
        z = self.coefficients.base().coefficient(self.N - 1)
        L = (self.N - 1) * self.d
        g = g_l(self.N, self.N - 1, self.statistics, Regime.DIRECT, eps, self.d, acc)
        return -math.gamma(L / 2 + 1) * g / (2 * z)

    def delta_e_inf(self, E: float) -> float:
        u = max(self._u(E), 0.0)
        c_n = self.coefficients.c(self.N)
        du = self.a_tilde * (c_n * u ** (self.N * self.d / 2)) ** ((2 / self.d - 1) / self.N)
        return du * 4 * math.pi / self.v_eff ** (2 / self.d)

    def delta_e(self, E: float, alpha: float, acc: Accuracy = None) -> float:
        if alpha == 0:
            return 0.0
        fraction = 1.0 if math.isinf(alpha) else self.chi(E / alpha, acc)
        if not 0 <= fraction <= 1:
            _warn_once((self.N, self.d), f'Shift fraction {fraction:.6g} outside [0, 1] at E/alpha={E / alpha:.6g}')
        return fraction * self.delta_e_inf(E)


def shift_model(N: int, d: float, statistics=Statistics.BOSE, v_eff: float = 1.0,
                base: Optional[str] = None) -> ShiftModel:
    statistics = Statistics.parse(statistics)
    if statistics is not Statistics.BOSE:
        raise DomainError('The energy shift interpolates from bosons; got fermions.')
    if N < 2:
        raise DomainError(f'The energy shift needs at least two particles, got {N=}')
    if nonint_coefficients(N, d, statistics).coefficient(N - 1) == 0:
        raise DomainError(f'z_(N-1) vanishes for {N=}, {d=}')
    a_tilde, exact = _shift_constant(N, d, statistics)
    return ShiftModel(N, d, statistics, a_tilde, exact, v_eff, base or src.g_cfg.shift_base)


def shifted_counting(model: ShiftModel, alpha: float, E: float, acc: Accuracy = None) -> float:
    """Base counting function evaluated at E - dE(E); the shift is not iterated to self-consistency."""
    if E <= 0:
        return 0.0
    shifted = E - model.delta_e(E, alpha, acc)
    if model.base == 'qce' and 0 < alpha < math.inf:
        return model.coefficients.counting(model.v_eff, alpha, shifted, acc)
    return model.coefficients.counting(model.v_eff, 0.0, shifted, acc)
