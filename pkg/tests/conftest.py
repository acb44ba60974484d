import math
from pathlib import Path

import pytest

import src
from src.model import Confinement, SystemSpec, ThermalPoint
from src.oracles.levels import CACHE_ENV
from src.specfun import Accuracy

ROOT = Path(__file__).resolve().parents[1]


@pytest.fixture(autouse=True)
def no_level_cache(monkeypatch):
    monkeypatch.delenv(CACHE_ENV, raising=False)


@pytest.fixture
def restore_g_cfg():
    saved = dict(src.g_cfg)
    yield
    for key, value in saved.items():
        setattr(src.g_cfg, key, value)


@pytest.fixture
def acc():
    return Accuracy(1e-12, 200)


@pytest.fixture
def ring():
    """Factory for a single-species ring sized so that x = V_eff / lambda_T at beta."""

    def make(N, x, beta=1.0, alpha=0.0, statistics='bose'):
        length = x * math.sqrt(4 * math.pi * beta)
        return SystemSpec.single(N, statistics, Confinement.ring(length), alpha), ThermalPoint(beta)

    return make


@pytest.fixture
def harmonic():
    def make(N, alpha=0.0, omega=1.0, statistics='bose'):
        return SystemSpec.single(N, statistics, Confinement.harmonic(omega), alpha)

    return make
