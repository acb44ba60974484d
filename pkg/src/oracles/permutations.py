"""Brute-force cycle statistics of the symmetric group, by walking every permutation."""
from __future__ import annotations

import itertools
import math
from collections import Counter
from typing import Dict, Tuple

from src.errors import DomainError
from src.model import Statistics

MAX_BRUTE_N = 9


def cycle_lengths(perm: Tuple[int, ...]) -> Tuple[int, ...]:
    seen = [False] * len(perm)
    lengths = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        n, i = 0, start
        while not seen[i]:
            seen[i] = True
            i = perm[i]
            n += 1
        lengths.append(n)
    return tuple(sorted(lengths, reverse=True))


def cycle_type_census(N: int) -> Counter:
    if not 0 <= N <= MAX_BRUTE_N:
        raise DomainError(f'Brute-force enumeration supports 0 <= N <= {MAX_BRUTE_N}, got {N=}')
    return Counter(cycle_lengths(p) for p in itertools.permutations(range(N)))


def brute_force_nonint(N: int, d: float, statistics='bose') -> Dict[int, float]:
    """z_l as (1/N!) sum over permutations with l cycles of sign^(N-l) prod_c n_c^(-d/2)."""
    sign = Statistics.parse(statistics).sign
    z: Dict[int, list] = {}
    for lengths, count in cycle_type_census(N).items():
        l = len(lengths)
        z.setdefault(l, []).append(count * sign ** (N - l) * math.prod(n ** (-d / 2) for n in lengths))
    return {l: math.fsum(terms) / math.factorial(N) for l, terms in sorted(z.items())}
