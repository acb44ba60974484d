from __future__ import annotations

from typing import Any, Dict, Optional


class QCEError(Exception):
    """Root of all errors raised by qce1d."""

    kind = 'qce_error'

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.message = message
        self.details: Dict[str, Any] = details

    def record(self) -> Dict[str, Any]:
        return {'error': self.kind, 'message': self.message, **{k: _plain(v) for k, v in self.details.items()}}


class DomainError(QCEError, ValueError):
    kind = 'domain_error'


class ConvergenceError(QCEError):
    kind = 'convergence_error'

    def __init__(self, message: str, achieved: Optional[float] = None, target: Optional[float] = None, **details):
        super().__init__(message, achieved=achieved, target=target, **details)
        self.achieved = achieved
        self.target = target


class BreakdownError(QCEError):
    """First-order expansion left its domain: Z <= 0 where a positive Z is needed."""

    kind = 'breakdown'


class CompletenessError(QCEError):
    kind = 'completeness'


class ProviderError(QCEError):
    kind = 'provider_error'


class NonMonotoneError(QCEError):
    kind = 'non_monotone'


def _plain(v):
    if isinstance(v, (str, int, float, bool)) or v is None:
        return v
    if isinstance(v, (list, tuple)):
        return [_plain(i) for i in v]
    if isinstance(v, dict):
        return {str(k): _plain(i) for k, i in v.items()}
    try:
        return float(v)
    except (TypeError, ValueError):
        return repr(v)
