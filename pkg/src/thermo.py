"""Pressure, isothermal compressibility and the ideal-gas virial baseline."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.errors import BreakdownError, DomainError, NonMonotoneError, ProviderError, QCEError
from src.model import Regime, Statistics, SystemSpec, ThermalPoint
from src.partition import SplitAnsatz, interacting_coefficients, z1_partition, species_coupling
from src.combinatorics import nonint_coefficients
from src.specfun import Accuracy
from src.utility.fn import poly_fsum, richardson_derivative
from src.utility.logger import get_logger_func

_warn, _info, _debug = get_logger_func('thermo')

MAX_VIRIAL_ORDER = 8
# relative volume step of the pressure derivative
_VOLUME_STEP = 1e-5
# relative volume step of the level derivatives in the split ansatz
_LEVEL_STEP = 1e-4


@dataclass(frozen=True)
class EOSPoint:
    v_eff: float
    beta: float
    N: int
    alpha: float
    P: float
    kappa: Optional[float] = None
    split: bool = False
    breakdown: bool = False


def _breakdown(z, spec: SystemSpec, tp: ThermalPoint):
    raise BreakdownError(f'Partition function is not positive (Z={z:.6g}); first-order expansion fails here.',
                         Z=z, N=spec.N, beta=tp.beta, v_eff=spec.v_eff, alpha=str(spec.alpha))


def _polynomial_pressure(coeffs, spec: SystemSpec, tp: ThermalPoint) -> float:
    x = tp.x(spec)
    z = poly_fsum(coeffs, x)
    if z <= 0:
        _breakdown(z, spec, tp)
    return tp.kT / spec.v_eff * poly_fsum(coeffs, x, weight=float) / z


def nonint_pressure(spec: SystemSpec, tp: ThermalPoint) -> float:
    """Pressure from Z_0 alone."""
    return _polynomial_pressure(nonint_coefficients(spec.N, spec.d, spec.statistics).z, spec, tp)


def _numeric_pressure(spec: SystemSpec, tp: ThermalPoint, acc: Accuracy) -> float:
    v = spec.v_eff
    z = z1_partition(spec, tp, acc=acc)
    if z <= 0:
        _breakdown(z, spec, tp)

    def log_z(volume):
        return math.log(z1_partition(spec.with_volume(volume), tp, acc=acc))

    return tp.kT * richardson_derivative(log_z, v, v * _VOLUME_STEP)


def _split_pressure(spec: SystemSpec, tp: ThermalPoint, ansatz: SplitAnsatz, acc: Accuracy) -> float:
    v = spec.v_eff
    e0, e1 = ansatz.levels(v)
    h = v * _LEVEL_STEP
    de0 = richardson_derivative(lambda u: ansatz.levels(u)[0], v, h)
    de1 = richardson_derivative(lambda u: ansatz.levels(u)[1], v, h)
    w = SplitAnsatz.weights(spec, species_coupling(spec, tp, 0), acc)
    x = tp.x(spec)
    poly = poly_fsum(w, x)
    # d x^l / dV = l x^l / V
    poly_slope = poly_fsum(w, x, weight=float) / v
    ratio = math.exp(-tp.beta * (e0 - e1))
    z = ratio + poly
    if z <= 0:
        _breakdown(z * math.exp(-tp.beta * e1), spec, tp)
    return (-de0 * ratio - de1 * poly + tp.kT * poly_slope) / z


def pressure(spec: SystemSpec, tp: ThermalPoint, use_split: bool = False, ansatz: Optional[SplitAnsatz] = None,
             regime=Regime.DIRECT, acc: Accuracy = None) -> float:
    """P = kT d ln Z / dV_eff."""
    if use_split:
        if ansatz is None:
            raise ProviderError('use_split requires a SplitAnsatz.')
        return _split_pressure(spec, tp, ansatz, acc)
    if not spec.is_single:
        return _numeric_pressure(spec, tp, acc)
    coeffs = interacting_coefficients(spec, regime).total(species_coupling(spec, tp, 0), acc)
    return _polynomial_pressure(coeffs, spec, tp)


def pressure_slope(spec: SystemSpec, tp: ThermalPoint, use_split: bool = False,
                   ansatz: Optional[SplitAnsatz] = None, regime=Regime.DIRECT, acc: Accuracy = None) -> float:
    """dP/dV_eff at fixed T and N."""
    v = spec.v_eff

    def p_of(volume):
        return pressure(spec.with_volume(volume), tp, use_split, ansatz, regime, acc)

    return richardson_derivative(p_of, v, v * _VOLUME_STEP)


def compressibility(spec: SystemSpec, tp: ThermalPoint, use_split: bool = False,
                    ansatz: Optional[SplitAnsatz] = None, regime=Regime.DIRECT, acc: Accuracy = None) -> float:
    """kappa_T = -1 / (V_eff dP/dV_eff)."""
    slope = pressure_slope(spec, tp, use_split, ansatz, regime, acc)
    if not slope < 0:
        raise NonMonotoneError(f'P is not decreasing in V_eff here (dP/dV={slope:.6g}); '
                               f'report dP/dV directly instead of kappa.', slope=slope,
                               v_eff=spec.v_eff, beta=tp.beta)
    return -1.0 / (spec.v_eff * slope)


def eos_point(spec: SystemSpec, tp: ThermalPoint, use_split: bool = False, ansatz: Optional[SplitAnsatz] = None,
              with_kappa: bool = True, regime=Regime.DIRECT, acc: Accuracy = None) -> EOSPoint:
    """Pressure and compressibility with failures turned into annotations."""
    params = dict(v_eff=spec.v_eff, beta=tp.beta, N=spec.N, alpha=spec.coupling(), split=use_split)
    try:
        p = pressure(spec, tp, use_split, ansatz, regime, acc)
    except BreakdownError as e:
        _warn(e.message)
        return EOSPoint(P=math.nan, breakdown=True, **params)
    kappa = None
    if with_kappa:
        try:
            kappa = compressibility(spec, tp, use_split, ansatz, regime, acc)
        except QCEError as e:
            _debug(e.message)
            kappa = math.nan
    return EOSPoint(P=p, kappa=kappa, **params)


def _series_compose(outer: np.ndarray, inner: np.ndarray, order: int) -> np.ndarray:
    """Coefficients of outer(inner(r)) up to r^order; inner has no constant term."""
    result = np.zeros(order + 1)
    power = np.zeros(order + 1)
    power[0] = 1.0
    for k in range(order + 1):
        if k:
            power = np.convolve(power, inner)[:order + 1]
        result += outer[k] * power
    return result


def virial_coefficients(d: float, statistics, order: int) -> np.ndarray:
    """B_1..B_order of P / (n kT) = sum_j B_j (n lambda^d)^(j-1) for the ideal quantum gas."""
    sign = Statistics.parse(statistics).sign
    k = np.arange(1, order + 1, dtype=float)
    signs = sign ** (k + 1)
    density = np.concatenate([[0.0], signs * k ** (-d / 2)])
    pressure_series = np.concatenate([[0.0], signs * k ** (-d / 2 - 1)])
    # invert density(y) = r: y = r - sum_{k>=2} a_k y^k, iterated to the requested order
    fugacity = np.zeros(order + 1)
    fugacity[1] = 1.0
    higher = density.copy()
    higher[:2] = 0.0
    for _ in range(order):
        fugacity = -_series_compose(higher, fugacity, order)
        fugacity[1] += 1.0
    p = _series_compose(pressure_series, fugacity, order)
    return p[1:]


def virial_pressure(spec: SystemSpec, tp: ThermalPoint, order: int) -> float:
    """Grand-canonical virial series of the ideal gas in effective dimension d, truncated at `order`."""
    if not 1 <= order <= MAX_VIRIAL_ORDER:
        raise DomainError(f'Virial order must lie in 1..{MAX_VIRIAL_ORDER}, got {order=}')
    b = virial_coefficients(spec.d, spec.statistics, order)
    # n lambda^d = N / x
    r = spec.N / tp.x(spec)
    return spec.N * tp.kT / spec.v_eff * float(np.polynomial.polynomial.polyval(r, b))
