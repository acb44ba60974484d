"""Independent brute-force references: raw amplitude integrals, exact few-body spectra,
canonical sums and numerical Laplace transforms. Slow; used by
tests, the slow reference comparisons and the oracle_compare command or ``command.oracle=true`` sweeps."""
from src.oracles.levels import LevelList, cached_levels, ORACLE_VERSION
from src.oracles.amplitude import amplitude_quadrature, fermionized_amplitude_reference, static_scatterer_correction
from src.oracles.harmonic import harmonic_single_particle_levels, relative_even_levels, two_body_harmonic_levels
from src.oracles.bethe import (bethe_rapidities, bethe_split_ansatz, lieb_liniger_levels, lowest_two_levels,
                               plane_wave_ground_energy)
from src.oracles.canonical import (canonical_ideal_recursion, canonical_partition_from_levels,
                                   canonical_pressure_from_levels, harmonic_z1, ideal_harmonic_eos)
from src.oracles.laplace import numeric_inverse_laplace, numeric_laplace
from src.oracles.permutations import brute_force_nonint, cycle_type_census
