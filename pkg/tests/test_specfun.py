import math

import mpmath
import pytest
from scipy import special

import src
from src.errors import ConvergenceError, DomainError
from src.specfun import SQRT_PI, Accuracy, erfcx, f_nu, f_stable, f_tail, integrate, owen_t


def _phi(x):
    return 0.5 * special.erfc(-x / math.sqrt(2))


def test_erfcx():
    assert erfcx(0.0) == 1.0
    assert erfcx(1e6) == pytest.approx(1 / (SQRT_PI * 1e6), rel=1e-10)
    with mpmath.workdps(50):
        reference = float(mpmath.exp(mpmath.mpf(1.5) ** 2) * mpmath.erfc(mpmath.mpf(1.5)))
    assert erfcx(1.5) == pytest.approx(reference, rel=1e-14)


def test_accuracy():
    assert Accuracy(1e-8, 10).epsrel == 1e-8
    for tol in (1e-15, 1e-3, 0.0):
        with pytest.raises(DomainError):
            Accuracy(tol, 10)
    with pytest.raises(DomainError):
        Accuracy(1e-8, 0)


def test_accuracy_default(restore_g_cfg):
    src.g_cfg.rel_tol = 1e-9
    src.g_cfg.max_subdivisions = 50
    assert Accuracy.default() == Accuracy(1e-9, 50)


@pytest.mark.filterwarnings('ignore::scipy.integrate.IntegrationWarning')
def test_integrate_reports_failure():
    assert integrate(math.exp, 0.0, 1.0) == pytest.approx(math.e - 1, rel=1e-13)
    with pytest.raises(ConvergenceError) as info:
        integrate(lambda x: 1 / x, 0.0, 1.0, Accuracy(1e-12, 1), what='log divergence')
    assert info.value.details['target'] == 1e-12


@pytest.mark.parametrize('a', [0.1, 1.0, 7.0])
def test_owen_t_special_values(a):
    assert owen_t(0.0, a) == pytest.approx(math.atan(a) / (2 * math.pi), rel=1e-12)
    assert owen_t(0.7, -a) == -owen_t(0.7, a)
    assert owen_t(1.3, 0.0) == 0.0


@pytest.mark.parametrize('h', [0.0, 0.4, 1.0, 2.5])
def test_owen_t_identities(h):
    assert owen_t(h, 1.0) == pytest.approx(0.5 * _phi(h) * (1 - _phi(h)), rel=1e-12)
    assert owen_t(h, math.inf) == pytest.approx(0.25 * special.erfc(h / math.sqrt(2)), rel=1e-14)
    for a in (0.3, 2.0):
        lhs = owen_t(h, a) + owen_t(a * h, 1 / a)
        rhs = 0.5 * _phi(h) + 0.5 * _phi(a * h) - _phi(h) * _phi(a * h)
        assert lhs == pytest.approx(rhs, rel=1e-11)


@pytest.mark.parametrize('s', [0.0, 0.01, 1.0, 50.0, 1e4])
def test_f_at_zero_nu(s):
    assert f_nu(0.0, s) == pytest.approx(0.5 * SQRT_PI * erfcx(math.sqrt(s)), rel=1e-11)


@pytest.mark.parametrize('nu', [0.0, 0.5, 1.0, math.sqrt(2), 3.0])
def test_f_at_zero_coupling(nu):
    assert f_nu(nu, 0.0) == pytest.approx(0.5 * SQRT_PI - math.atan(nu) / SQRT_PI, rel=1e-13)
    assert f_tail(nu, 0.0) == 1.0 - 2 / math.pi * math.atan(nu)


@pytest.mark.parametrize('nu', [1 / math.sqrt(3), 1.0, math.sqrt(2)])
@pytest.mark.parametrize('s', [0.05, 0.3, 1.0])
def test_f_methods_agree(nu, s, acc):
    stable = f_nu(nu, s, acc)
    assert f_nu(nu, s, acc, method='owen') == pytest.approx(stable, rel=1e-9)
    assert f_nu(nu, s, acc, method='naive') == pytest.approx(stable, rel=1e-9)


def test_f_against_high_precision():
    nu, s = 2.0, 300.0
    with mpmath.workdps(60):
        rs = mpmath.sqrt(s)

        def integrand(z):
            return mpmath.exp(-(z - nu * rs) ** 2) * mpmath.erfc(rs + nu * z)

        points = [0, 0.05, 0.1, 0.25, 0.5, 1, 2, 4, nu * rs - 1, nu * rs, nu * rs + 1, mpmath.inf]
        reference = mpmath.exp((1 + nu * nu) * s) * mpmath.quad(integrand, points)
    assert float(reference) == pytest.approx(0.0125303924376774, rel=1e-10)
    assert f_nu(nu, s) == pytest.approx(float(reference), rel=1e-8)


def test_f_positive_and_decreasing():
    for nu in (0.0, 0.7, 2.0):
        values = [f_nu(nu, s) for s in (0.0, 0.1, 1.0, 10.0, 1e3, 1e6)]
        assert all(v > 0 for v in values)
        assert all(a > b for a, b in zip(values, values[1:]))


def test_f_errors():
    with pytest.raises(DomainError):
        f_nu(-1.0, 1.0)
    with pytest.raises(DomainError):
        f_stable(1.0, -1.0)
    with pytest.raises(DomainError):
        f_nu(1.0, 400.0, method='naive')
    with pytest.raises(DomainError):
        f_nu(1.0, 1.0, method='series')
