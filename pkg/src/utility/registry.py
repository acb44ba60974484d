from __future__ import annotations

import functools
from typing import Callable, Dict, Hashable

from src.utility.logger import get_logger_func

_warn, _info, _debug = get_logger_func('registry')


class ImplGroup:
    """A named family of interchangeable implementations selected by key.

    >>> amplitude = ImplGroup('amplitude')
    >>> @amplitude.register('direct')
    ... def direct(...): ...
    >>> amplitude.get('direct')(...)
    """

    def __init__(self, name: str):
        self.name = name
        self._impl: Dict[Hashable, Callable] = {}

    def register(self, spec: Hashable):
        def decorator(func):
            assert spec not in self._impl, spec
            self._impl[spec] = func

            @functools.wraps(func)
            def wrapper(*args, **kwargs):
                return func(*args, **kwargs)

            return wrapper

        return decorator

    def get(self, spec: Hashable) -> Callable:
        try:
            return self._impl[spec]
        except KeyError as e:
            _warn(f'Failed to load {self.name}: {spec}. Known: {sorted(map(str, self._impl))}')
            raise e

    def __contains__(self, spec):
        return spec in self._impl

    def keys(self):
        return self._impl.keys()
