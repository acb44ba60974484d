import math

import numpy as np
import pytest

from src.errors import BreakdownError, DomainError, NonMonotoneError, ProviderError
from src.model import Confinement, Species, SystemSpec, ThermalPoint
from src.partition import SplitAnsatz, z0_partition
from src.thermo import (compressibility, eos_point, nonint_pressure, pressure, pressure_slope, virial_coefficients,
                        virial_pressure)


def _exact_harmonic_z(N, beta, statistics):
    ground = N * beta / 2 if statistics == 'bose' else N * N * beta / 2
    return math.exp(-ground) / math.prod(1 - math.exp(-k * beta) for k in range(1, N + 1))


def test_interaction_free_pressure_matches(ring):
    spec, tp = ring(3, 2.5)
    assert pressure(spec, tp) == pytest.approx(nonint_pressure(spec, tp), rel=1e-14)


@pytest.mark.parametrize('beta', [0.3, 1.0, 4.0])
def test_single_particle_is_classical(ring, beta):
    spec, tp = ring(1, 1.7, beta=beta, alpha=2.0)
    p = pressure(spec, tp)
    assert p == pytest.approx(tp.kT / spec.v_eff, rel=1e-13)
    assert compressibility(spec, tp) == pytest.approx(1 / p, rel=1e-7)
    assert pressure_slope(spec, tp) == pytest.approx(-tp.kT / spec.v_eff ** 2, rel=1e-7)


@pytest.mark.parametrize('N', [2, 3, 5])
@pytest.mark.parametrize('statistics', ['bose', 'fermi'])
def test_classical_limit(ring, N, statistics):
    spec, tp = ring(N, 1e4 * N, alpha=0.5, statistics=statistics)
    assert pressure(spec, tp) * spec.v_eff / (N * tp.kT) == pytest.approx(1.0, abs=1e-3)


def test_bosons_below_fermions_above(ring):
    bose, tp = ring(3, 10.0)
    fermi, _ = ring(3, 10.0, statistics='fermi')
    assert z0_partition(fermi, tp) > 0
    classical = 3 * tp.kT / bose.v_eff
    assert nonint_pressure(bose, tp) < classical < nonint_pressure(fermi, tp)


def test_virial_coefficients_three_dimensions():
    b = virial_coefficients(3, 'bose', 3)
    assert b[0] == 1.0
    assert b[1] == pytest.approx(-2 ** -2.5, rel=1e-14)
    assert b[2] == pytest.approx(1 / 8 - 2 / (9 * math.sqrt(3)), rel=1e-13)


def test_virial_coefficients_two_dimensions():
    b = virial_coefficients(2, 'bose', 5)
    np.testing.assert_allclose(b, [1, -1 / 4, 1 / 36, 0, -1 / 3600], rtol=1e-12, atol=1e-15)


@pytest.mark.parametrize('d', [1, 2, 3])
def test_virial_fermi_signs(d):
    bose = virial_coefficients(d, 'bose', 6)
    fermi = virial_coefficients(d, 'fermi', 6)
    signs = (-1.0) ** np.arange(6)
    np.testing.assert_allclose(fermi, signs * bose, rtol=1e-12, atol=1e-16)


def test_virial_against_canonical(harmonic):
    spec = harmonic(3)
    tp = ThermalPoint(1e-3)
    assert tp.x(spec) == pytest.approx(1000.0)
    assert virial_pressure(spec, tp, 8) == pytest.approx(nonint_pressure(spec, tp), rel=1e-3)
    assert virial_pressure(spec, tp, 1) == pytest.approx(3 * tp.kT / spec.v_eff)
    with pytest.raises(DomainError):
        virial_pressure(spec, tp, 0)
    with pytest.raises(DomainError):
        virial_pressure(spec, tp, 9)


@pytest.mark.parametrize('N', [2, 3])
@pytest.mark.parametrize('beta', [0.05, 0.1, 0.2])
@pytest.mark.parametrize('statistics', ['bose', 'fermi'])
def test_nonint_partition_against_exact_trap(harmonic, N, beta, statistics):
    spec = harmonic(N, statistics=statistics)
    z0 = z0_partition(spec, ThermalPoint(beta))
    assert z0 == pytest.approx(_exact_harmonic_z(N, beta, statistics), rel=1e-2)


@pytest.mark.parametrize('alpha', [1e-4, 1e-6])
def test_pressure_continuous_in_alpha(ring, alpha):
    free, tp = ring(3, 5.0)
    weak, _ = ring(3, 5.0, alpha=alpha)
    assert abs(pressure(weak, tp) / pressure(free, tp) - 1) <= math.sqrt(alpha)
    assert pressure(weak, tp) > pressure(free, tp)


def test_repulsion_raises_pressure(ring):
    free, tp = ring(3, 2.0)
    strong, _ = ring(3, 2.0, alpha=0.5)
    assert pressure(strong, tp) > pressure(free, tp)


def test_breakdown(ring):
    spec, tp = ring(2, 0.1, alpha=1e6)
    with pytest.raises(BreakdownError) as info:
        pressure(spec, tp)
    assert info.value.details['Z'] < 0
    point = eos_point(spec, tp)
    assert point.breakdown and math.isnan(point.P) and point.kappa is None


def test_split_requires_provider(ring):
    spec, tp = ring(2, 1.0, alpha=1.0)
    with pytest.raises(ProviderError):
        pressure(spec, tp, use_split=True)


def test_split_nonmonotone_pressure(ring):
    spec, tp = ring(2, 1.0, alpha=1.0)
    ansatz = SplitAnsatz(lambda v: -v * v, lambda v: -v * v + 100.0, 'bound')
    assert pressure(spec, tp, True, ansatz) == pytest.approx(2 * spec.v_eff, rel=1e-6)
    with pytest.raises(NonMonotoneError):
        compressibility(spec, tp, True, ansatz)
    point = eos_point(spec, tp, True, ansatz)
    assert point.split and not point.breakdown
    assert math.isnan(point.kappa)


def test_split_pressure_without_gap(ring):
    spec, tp = ring(3, 2.0, alpha=0.3)
    flat = SplitAnsatz(lambda v: 0.0, lambda v: 0.0, 'flat')
    assert pressure(spec, tp, True, flat) == pytest.approx(pressure(spec, tp), rel=1e-9)


def test_mixture_pressure():
    tp = ThermalPoint(0.8)
    spec = SystemSpec((Species(1), Species(1, 'fermi', 2.0)), Confinement.ring(9.0), 0.0)
    assert pressure(spec, tp) == pytest.approx(2 * tp.kT / 9.0, rel=1e-8)
    point = eos_point(spec, tp, with_kappa=False)
    assert point.kappa is None and point.N == 2
