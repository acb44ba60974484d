"""Integer partitions, cycle types of the symmetric group and the non-interacting coefficients z_l.

Z_0 = sum_l z_l x^l with x = V_eff / lambda_T^d.  Each permutation of cycle type N contributes
prod_n (x n^(-d/2)); grouping permutations by the number of cycles l gives z_l."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Tuple

import sympy
from sympy.utilities.iterables import partitions as _sympy_partitions

from src.errors import DomainError
from src.model import Statistics
from src.utility.fn import poly_fsum
from src.utility.logger import get_logger_func

_warn, _info, _debug = get_logger_func('combinatorics')

MAX_N = 64
# above this the partition sum is replaced by the equivalent cycle-index recursion
MAX_ENUMERATED_N = 24


@dataclass(frozen=True)
class IntegerPartition:
    """Parts in descending order, e.g. (2, 1) for 3 = 2 + 1."""

    parts: Tuple[int, ...]

    def __post_init__(self):
        assert self.parts, 'empty partition'
        assert all(p >= 1 for p in self.parts), self.parts
        assert all(a >= b for a, b in zip(self.parts, self.parts[1:])), f'parts not descending: {self.parts}'

    @classmethod
    def from_multiplicities(cls, table: Dict[int, int]) -> IntegerPartition:
        parts = []
        for part in sorted(table, reverse=True):
            parts.extend([part] * table[part])
        return cls(tuple(parts))

    @property
    def total(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def multiplicities(self) -> Dict[int, int]:
        table: Dict[int, int] = {}
        for p in self.parts:
            table[p] = table.get(p, 0) + 1
        return table


def _check_n(N: int):
    if not 1 <= N <= MAX_N:
        raise DomainError(f'Partition enumeration is guarded to 1 <= N <= {MAX_N}, got {N=}', N=N)


def iter_partitions(N: int) -> Iterator[IntegerPartition]:
    _check_n(N)
    # sympy reuses the yielded dict between steps
    for table in _sympy_partitions(N):
        yield IntegerPartition.from_multiplicities(dict(table))


def partitions(N: int) -> List[IntegerPartition]:
    return list(iter_partitions(N))


def partition_count(N: int) -> int:
    _check_n(N)
    return int(sympy.npartitions(N))


def cycle_count(partition: IntegerPartition) -> int:
    """Number of permutations of N = sum(parts) elements with this cycle type."""
    denominator = 1
    for part, mult in partition.multiplicities.items():
        denominator *= part ** mult * math.factorial(mult)
    return math.factorial(partition.total) // denominator


@dataclass(frozen=True)
class NonintCoefficients:
    N: int
    d: float
    statistics: Statistics
    z: Dict[int, float]
    exact: Optional[Dict[int, sympy.Expr]] = None

    def coefficient(self, l: int) -> float:
        """z_l^(N) with z_0^(m) = delta_{m0} and z_l = 0 outside 0..N."""
        if l == 0:
            return 1.0 if self.N == 0 else 0.0
        return self.z.get(l, 0.0)

    def evaluate(self, x: float) -> float:
        return poly_fsum(self.z, x)

    def pressure_moment(self, x: float) -> float:
        return poly_fsum(self.z, x, weight=float)


def _exact_exponent(d: float) -> Optional[sympy.Rational]:
    twice = 2 * d
    if abs(twice - round(twice)) > 1e-12:
        return None
    return sympy.Rational(int(round(twice)), 4)  # d/2


def _by_partitions(N: int, d: float, sign: int, exact: bool):
    half_d = _exact_exponent(d) if exact else None
    z_float: Dict[int, List[float]] = {}
    z_exact: Dict[int, sympy.Expr] = {}
    for partition in iter_partitions(N):
        l = partition.length
        # c_N / N! = 1 / (prod n * prod m!)
        weight = Fraction(cycle_count(partition), math.factorial(N))
        z_float.setdefault(l, []).append(float(weight) * math.prod(n ** (-d / 2) for n in partition.parts))
        if half_d is not None:
            term = sympy.Rational(weight.numerator, weight.denominator)
            for n in partition.parts:
                term *= sympy.Integer(n) ** (-half_d)
            z_exact[l] = z_exact.get(l, sympy.Integer(0)) + term
    signs = {l: sign ** (N - l) for l in z_float}
    z = {l: signs[l] * math.fsum(z_float[l]) for l in sorted(z_float)}
    if half_d is None:
        return z, None
    exact_z = {l: signs[l] * z_exact[l] for l in sorted(z_exact)}
    # collapse from the exact sums where available
    z = {l: float(exact_z[l]) for l in exact_z}
    return z, exact_z


def _by_recursion(N: int, d: float, sign: int) -> Dict[int, float]:
    # Z_m = (1/m) sum_k sign^(k+1) Z_1(k beta) Z_(m-k), Z_1(k beta) = x k^(-d/2)
    table: List[Dict[int, float]] = [{0: 1.0}]
    for m in range(1, N + 1):
        row: Dict[int, float] = {}
        for k in range(1, m + 1):
            factor = sign ** (k + 1) * k ** (-d / 2) / m
            for l, value in table[m - k].items():
                row[l + 1] = row.get(l + 1, 0.0) + factor * value
        table.append(row)
    return {l: table[N][l] for l in sorted(table[N])}


@lru_cache(maxsize=None)
def _nonint_coefficients(N: int, d: float, statistics: Statistics, exact: bool) -> NonintCoefficients:
    if N == 0:
        return NonintCoefficients(0, d, statistics, {}, {} if exact else None)
    if N <= MAX_ENUMERATED_N:
        z, z_exact = _by_partitions(N, d, statistics.sign, exact)
    else:
        _debug(f'Using cycle-index recursion for {N=}')
        z, z_exact = _by_recursion(N, d, statistics.sign), None
    return NonintCoefficients(N, d, statistics, z, z_exact)


def nonint_coefficients(N: int, d: float, statistics='bose', exact: bool = True) -> NonintCoefficients:
    """z_l^(N) = (+-1)^(N-l) / N! * sum over partitions with l parts of c_N prod n^(-d/2).

    N = 0 is accepted and gives the empty table (z_0^(0) = 1). Exact values are kept when 2d is an
    integer and N is small enough to enumerate partitions."""
    if N < 0 or N > MAX_N:
        raise DomainError(f'Coefficients are available for 0 <= N <= {MAX_N}, got {N=}', N=N)
    if not d > 0:
        raise DomainError(f'Effective dimension must be positive, got {d=}', d=d)
    return _nonint_coefficients(int(N), float(d), Statistics.parse(statistics), bool(exact))
