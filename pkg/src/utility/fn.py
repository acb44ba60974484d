import errno
import math
import os
from typing import Callable, Mapping

from hydra.utils import instantiate


def instantiate_no_recursive(*args, **kwargs):
    return instantiate(*args, **kwargs, _recursive_=False)


def symlink_force(target, link_name):
    try:
        os.symlink(target, link_name)
    except OSError as e:
        if e.errno == errno.EEXIST:
            os.remove(link_name)
            os.symlink(target, link_name)
        else:
            raise e


def poly_fsum(coeffs: Mapping[int, float], x: float, weight: Callable[[int], float] = None) -> float:
    """sum_l weight(l) * c_l * x^l, accumulated from the highest power down with exact rounding."""
    terms = []
    for l in sorted(coeffs, reverse=True):
        c = coeffs[l]
        if c == 0.0:
            continue
        w = 1.0 if weight is None else weight(l)
        terms.append(w * c * x ** l)
    return math.fsum(terms)


def richardson_derivative(func: Callable[[float], float], x: float, h: float) -> float:
    """Central difference at steps h and h/2 combined to cancel the O(h^2) term."""
    assert h > 0, f'{h=}'

    def central(step):
        return (func(x + step) - func(x - step)) / (2 * step)

    return (4 * central(h / 2) - central(h)) / 3
