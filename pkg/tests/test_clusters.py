import math
from fractions import Fraction

import pytest

from src.clusters import (ClusterGeometry, MassPair, a_cluster, a_cluster_fermionized, a_cluster_multispecies,
                          a_terms, amplitude_of, fermionized_terms_from_nu, terms_from_nu)
from src.errors import DomainError
from src.oracles.amplitude import amplitude_quadrature, fermionized_amplitude_reference
from src.specfun import erfcx

S_GRID = [0.0, 1e-3, 0.1, 1.0, 10.0, 100.0, 1e4]


@pytest.mark.parametrize('n1, n2, nu2', [(1, 1, Fraction(0)), (1, 2, Fraction(1, 3)), (2, 2, Fraction(1)),
                                         (3, 2, Fraction(7, 5)), (3, 3, Fraction(2))])
def test_geometry(n1, n2, nu2):
    geom = ClusterGeometry(n1, n2)
    assert geom.n == n1 + n2
    assert geom.nu_bar_squared == nu2
    assert geom.nu_bar == pytest.approx(math.sqrt(nu2))
    assert ClusterGeometry(n2, n1).nu_bar_squared == nu2


@pytest.mark.parametrize('s', [1e-4, 0.3, 2.0, 1e3])
def test_single_cycle_pair_closed_form(s):
    geom = ClusterGeometry(1, 1)
    assert a_cluster(geom, s) == pytest.approx(erfcx(math.sqrt(s)) - 1, rel=1e-11)
    assert a_cluster_fermionized(geom, s) == pytest.approx(erfcx(math.sqrt(s)), rel=1e-11)


@pytest.mark.parametrize('n1', range(1, 4))
@pytest.mark.parametrize('n2', range(1, 4))
def test_terms_cancel_without_coupling(n1, n2):
    terms = a_terms(ClusterGeometry(n1, n2), 0.0)
    assert terms.a2 == 0.0 and terms.a4 == 0.0
    assert terms.total == pytest.approx(0.0, abs=1e-15)
    assert a_cluster(ClusterGeometry(n1, n2), 0.0) == 0.0


def test_fermionized_term_signs():
    for nu in (0.3, 1.0, 2.0):
        for s in (0.1, 5.0):
            direct = terms_from_nu(nu, s)
            fermionized = fermionized_terms_from_nu(nu, s)
            assert fermionized.a2 == -direct.a2
            assert fermionized.a4 == -direct.a4
            assert fermionized.a3 == direct.a3


@pytest.mark.parametrize('n1, n2', [(1, 1), (1, 2), (2, 3), (4, 4)])
def test_amplitude_sign_and_monotonicity(n1, n2):
    values = [a_cluster(ClusterGeometry(n1, n2), s) for s in S_GRID]
    assert all(v <= 0 for v in values)
    assert all(a >= b for a, b in zip(values, values[1:]))


def test_fermi_amplitude_vanishes():
    assert a_cluster(ClusterGeometry(2, 3), 1.0, 'fermi') == 0.0
    assert amplitude_of(1.0, 1.0, 'fermi', 'direct') == 0.0


@pytest.mark.parametrize('n1, n2', [(1, 2), (2, 2), (2, 3)])
@pytest.mark.parametrize('s', [0.5, 5.0, 50.0])
def test_fermionized_against_reference(n1, n2, s):
    value = a_cluster_fermionized(ClusterGeometry(n1, n2), s)
    assert value == pytest.approx(fermionized_amplitude_reference(n1, n2, s), rel=1e-9, abs=1e-13)


def test_fermionized_vanishes_at_strong_coupling():
    geom = ClusterGeometry(2, 2)
    values = [abs(a_cluster_fermionized(geom, s)) for s in (1e2, 1e4, 1e8)]
    assert values[0] > values[1] > values[2]
    assert values[2] < 1e-3


@pytest.mark.parametrize('n1, n2, s', [(1, 1, 1.0), (3, 2, 0.1), (3, 2, 1.0), (3, 2, 10.0)])
def test_against_quadrature(n1, n2, s):
    value = a_cluster(ClusterGeometry(n1, n2), s)
    assert value == pytest.approx(amplitude_quadrature(n1, n2, s), rel=1e-6)


def test_mass_pair_equal_masses():
    pair = MassPair(1.0, 1.0)
    assert pair.reduced == 0.25 and pair.total == 1.0
    assert pair.prefactor == 1.0
    assert pair.thermal_coupling(3.0) == 3.0
    assert pair.thermal_wavelength(2.0) == pytest.approx(math.sqrt(8 * math.pi))
    for n_i, n_j in [(1, 1), (1, 2), (3, 2)]:
        assert pair.tilde_n(n_i, n_j) == pytest.approx(n_i + n_j)
        assert pair.tilde_nu(n_i, n_j) == pytest.approx(ClusterGeometry(n_i, n_j).nu_bar, abs=1e-15)
        assert a_cluster_multispecies(n_i, n_j, pair, 0.7) == pytest.approx(
            a_cluster(ClusterGeometry(n_i, n_j), 0.7), rel=1e-13)


def test_mass_pair_unequal_masses():
    pair = MassPair(1.0, 3.0)
    assert pair.reduced == pytest.approx(0.375)
    assert pair.prefactor == pytest.approx(math.sqrt(4 / 3))
    assert pair.thermal_coupling(1.0) == pytest.approx(1.5)
    assert pair.tilde_nu(1, 1) == pytest.approx(math.sqrt(2 / 2 - 1), abs=1e-15)
    value = a_cluster_multispecies(1, 1, pair, 1.0)
    assert value == pytest.approx(math.sqrt(4 / 3) * (erfcx(math.sqrt(1.5)) - 1), rel=1e-12)


def test_errors():
    with pytest.raises(DomainError):
        ClusterGeometry(0, 2)
    with pytest.raises(DomainError):
        terms_from_nu(1.0, -1.0)
    with pytest.raises(DomainError):
        amplitude_of(1.0, 1.0, 'fermi', 'fermionized')
    with pytest.raises(DomainError):
        MassPair(0.0, 1.0)
    with pytest.raises(DomainError):
        a_cluster_multispecies(0, 1, MassPair(1.0, 1.0), 1.0)
