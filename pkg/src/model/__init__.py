from .confinement import Confinement, effective_dimension, effective_volume, RING, HARMONIC, SAMPLED
from .system import Regime, Species, Statistics, SystemSpec, ThermalPoint
