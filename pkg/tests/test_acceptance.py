"""End-to-end checks of the expansion against the exact references. Slow."""
import math

import numpy as np
import pytest
import sympy
from scipy.integrate import quad
from scipy.special import erfcx

from src.clusters import ClusterGeometry, a_cluster
from src.model import Confinement, SystemSpec, ThermalPoint
from src.oracles import (amplitude_quadrature, bethe_split_ansatz, ideal_harmonic_eos, lieb_liniger_levels,
                         numeric_laplace, two_body_harmonic_levels)
from src.command.reference import oracle_eos, oracle_partition
from src.combinatorics import nonint_coefficients
from src.partition import delta_z
from src.spectral import counting_function, g_l, shift_model, shifted_counting
from src.thermo import compressibility, pressure, virial_pressure
from src.utility.fn import richardson_derivative

S_LOG_GRID = np.geomspace(1e-3, 1e3, 25)
FERMIONIZATION_SCHEDULE = (1.0, 10.0, 1e2, 1e3, 1e4)

PAIRS = [(n1, n - n1) for n in range(2, 9) for n1 in range(1, n // 2 + 1)]


@pytest.mark.slow
@pytest.mark.parametrize('n1, n2', PAIRS)
def test_closed_form_amplitude_matches_quadrature(n1, n2):
    geom = ClusterGeometry(n1, n2)
    for s in S_LOG_GRID:
        assert a_cluster(geom, s) == pytest.approx(amplitude_quadrature(n1, n2, s), rel=1e-6), s


@pytest.mark.slow
@pytest.mark.parametrize('N', [2, 3, 4, 5])
@pytest.mark.parametrize('s', [0.01, 0.1, 1.0, 10.0])
def test_counting_coefficients_transform_to_delta_z(N, s):
    # g_N and dz_N vanish identically
    for l in range(1, N):
        forward = numeric_laplace(lambda eps: eps ** (l / 2) * g_l(N, l, 'bose', 'direct', eps, d=1), s)
        expected = delta_z(N, 1, 'bose', l, s) * s ** (-l / 2 - 1)
        assert forward == pytest.approx(expected, rel=1e-5), l


@pytest.mark.slow
@pytest.mark.parametrize('N', [2, 3, 4, 5, 6])
def test_no_first_order_correction_for_fermions(N):
    for s in S_LOG_GRID:
        for l in range(1, N + 1):
            assert abs(delta_z(N, 1, 'fermi', l, s)) <= 1e-14
            assert abs(delta_z(N, 2, 'fermi', l, s)) <= 1e-14


@pytest.mark.slow
def test_strong_coupling_approaches_fermions():
    N = 3
    bose, fermi = nonint_coefficients(N, 1, 'bose'), nonint_coefficients(N, 1, 'fermi')
    gaps = []
    for s in FERMIONIZATION_SCHEDULE:
        gaps.append(max(abs(bose.coefficient(l) + delta_z(N, 1, 'bose', l, s) - fermi.coefficient(l))
                        for l in (N - 1, N)))
    assert all(a > b for a, b in zip(gaps, gaps[1:])), gaps
    assert gaps[-1] <= 0.02
    # l = N - 1 reduces to erfcx(sqrt(s)) / sqrt(2)
    assert gaps[-1] == pytest.approx(erfcx(100.0) / math.sqrt(2), rel=1e-9)


@pytest.mark.slow
def test_single_cycle_coefficient_keeps_first_order_offset():
    # z~_1 = z_1 at N = 3, so the l = 1 gap is |Delta z_1| = 2 |a_(1,2)(s)| / sqrt(3), which saturates
    N = 3
    a12_inf = -2 / 3 - math.sqrt(3) / (2 * math.pi)
    bose, fermi = nonint_coefficients(N, 1, 'bose'), nonint_coefficients(N, 1, 'fermi')
    assert bose.coefficient(1) == pytest.approx(fermi.coefficient(1), rel=1e-15)
    gaps = [abs(bose.coefficient(1) + delta_z(N, 1, 'bose', 1, s) - fermi.coefficient(1))
            for s in FERMIONIZATION_SCHEDULE]
    for s, gap in zip(FERMIONIZATION_SCHEDULE, gaps):
        assert gap == pytest.approx(2 * abs(a_cluster(ClusterGeometry(1, 2), s)) / math.sqrt(3), rel=1e-12)
    assert a_cluster(ClusterGeometry(1, 2), 1e8) == pytest.approx(a12_inf, rel=1e-3)
    assert gaps[-1] == pytest.approx(2 * abs(a12_inf) / math.sqrt(3), rel=1e-2)
    assert gaps[-1] > 1.0


@pytest.mark.slow
def test_fermionized_correction_vanishes():
    N = 3
    values = [max(abs(delta_z(N, 1, 'bose', l, s, 'fermionized')) for l in range(1, N + 1))
              for s in FERMIONIZATION_SCHEDULE]
    assert all(a > b for a, b in zip(values, values[1:])), values
    assert values[-1] < values[0] / 10


@pytest.mark.slow
@pytest.mark.parametrize('N', [2, 3, 4, 5, 6])
def test_harmonic_shift_is_rigid(N):
    model = shift_model(N, 2, 'bose', v_eff=4 * math.pi)
    assert model.a_tilde_exact == sympy.Rational(N * (N - 1), 2)
    for E in (0.5, 3.0, 40.0):
        assert abs(model.delta_e_inf(E) - N * (N - 1) / 2) <= 1e-12
    assert model.chi(1e-6) >= 0.999
    # chi decays as tail / sqrt(eps), so chi(1e6) stays above 1e-3 for every N >= 2
    L = (N - 1) * 2
    tail = 2 / math.sqrt(math.pi) * math.gamma(L / 2 + 1) / math.gamma((L + 1) / 2)
    assert model.chi(1e6) == pytest.approx(tail / 1e3, rel=1e-2)
    assert model.chi(1e6) > 1e-3
    assert model.chi(1e10) <= 1e-4


@pytest.mark.slow
@pytest.mark.parametrize('kT', [5.0, 8.0, 12.0])
def test_ideal_trap_compressibility_matches_recursion(harmonic, kT):
    spec, tp = harmonic(3), ThermalPoint(1 / kT)
    assert spec.v_eff == pytest.approx(4 * math.pi)
    _, kappa_exact = ideal_harmonic_eos(3, 'bose', tp.beta, spec.v_eff)
    assert compressibility(spec, tp) == pytest.approx(kappa_exact, rel=0.02)


@pytest.mark.slow
def test_third_order_virial_fails_at_low_temperature(harmonic):
    spec = harmonic(3)
    deviations = []
    for kT in np.linspace(0.5, 1.0, 11):
        tp = ThermalPoint(1 / kT)
        exact, _ = ideal_harmonic_eos(3, 'bose', tp.beta, spec.v_eff)
        deviations.append(abs(virial_pressure(spec, tp, 3) - exact) / exact)
    assert max(deviations) >= 0.1


def _mean_staircase_deviation(levels, counting, n_levels=40):
    energies = levels.energies[:n_levels]
    assert len(energies) == n_levels
    return float(np.mean([abs(counting(E) - levels.staircase_mid(E)) for E in energies]))


@pytest.mark.slow
def test_weak_coupling_counting_follows_two_body_levels(harmonic):
    spec = harmonic(2, alpha=0.2)
    levels = two_body_harmonic_levels(0.2, 20.0)
    assert _mean_staircase_deviation(levels, lambda E: counting_function(spec, E)) <= 1.0


@pytest.mark.slow
def test_shifted_counting_follows_strong_coupling_levels(harmonic):
    spec = harmonic(2, alpha=20.0)
    model = shift_model(2, spec.d, 'bose', spec.v_eff, 'nonint')
    levels = two_body_harmonic_levels(20.0, 20.0)
    assert _mean_staircase_deviation(levels, lambda E: shifted_counting(model, 20.0, E)) <= 1.0


@pytest.mark.slow
@pytest.mark.parametrize('alpha', [1.0, 100.0])
def test_shifted_counting_six_bosons_smooth(harmonic, alpha):
    spec = harmonic(6, alpha=alpha)
    model = shift_model(6, spec.d, 'bose', spec.v_eff, 'nonint')
    values = [shifted_counting(model, alpha, E) for E in np.linspace(0.5, 40.0, 80)]
    assert np.all(np.isfinite(values))
    assert np.all(np.diff(values) >= 0)


def _ring(N, length, alpha):
    return SystemSpec.single(N, 'bose', Confinement.ring(length), alpha)


@pytest.mark.slow
@pytest.mark.parametrize('length', [20.0, 28.0])
def test_split_pressure_matches_bethe_sum(length):
    spec, tp = _ring(3, length, 0.1), ThermalPoint(1.0)
    split = pressure(spec, tp, use_split=True, ansatz=bethe_split_ansatz(3, 0.1))
    exact, _ = oracle_eos(spec, tp)
    assert split == pytest.approx(exact, rel=0.05)


@pytest.mark.slow
def test_ideal_ring_pressure_has_interior_maximum():
    tp = ThermalPoint(1.0)
    lengths = np.geomspace(1.0, 30.0, 15)

    def ln_z(length):
        return math.log(oracle_partition(_ring(3, length, 0.0), tp))

    values = [tp.kT * richardson_derivative(ln_z, L, 1e-3 * L) for L in lengths]
    peak = int(np.argmax(values))
    assert 0 < peak < len(values) - 1, values
    assert values[peak] > values[0] and values[peak] > values[-1]


def _interior_peaks(values):
    return [i for i in range(1, len(values) - 1) if values[i - 1] < values[i] > values[i + 1]]


@pytest.mark.slow
def test_interacting_ring_pressure_has_interior_maximum():
    # repulsion dominates at small L, condensation dips P above that, then the classical decay
    tp, ansatz = ThermalPoint(1.0), bethe_split_ansatz(3, 0.1)
    lengths = np.geomspace(2.0, 16.0, 14)
    split = [pressure(_ring(3, L, 0.1), tp, use_split=True, ansatz=ansatz) for L in lengths]
    exact = [oracle_eos(_ring(3, L, 0.1), tp)[0] for L in lengths]
    assert _interior_peaks(split), split
    assert _interior_peaks(exact), exact


def _smoothed_staircase_deviation(levels, counting, first, last):
    """Worst relative gap between the running means (1/E) int_0^E of staircase and counting function."""
    energies, degeneracies = np.asarray(levels.energies), np.asarray(levels.degeneracies)
    deviations = []
    for E in energies[first:last]:
        below = energies < E
        staircase = float(np.sum(degeneracies[below] * (E - energies[below]))) / E
        smooth = quad(counting, 0.0, E, limit=200)[0] / E
        deviations.append(abs(smooth - staircase) / staircase)
    return max(deviations)


@pytest.mark.slow
def test_ring_counting_follows_two_body_bethe_levels():
    spec = _ring(2, 10.0, 0.01)
    levels = lieb_liniger_levels(2, 10.0, 0.01, 40.0, with_slopes=False)
    assert len(levels) >= 40
    deviation = _smoothed_staircase_deviation(levels, lambda E: counting_function(spec, E), 20, 40)
    assert deviation <= 0.03
