from src.command.base import Command, GridSpec, RunConfig, build_system
from src.command.coefficients import Shift, ZCoeffs
from src.command.compare import OracleCompare
from src.command.spectrum import Counting, Dos
from src.command.thermodynamics import EOS, Partition
