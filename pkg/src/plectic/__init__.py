"""p-adic Schottky and plectic groups: limit sets, Bruhat-Tits trees,
invariant boundary measures, multiplicative integrals, period lattices,
Abel-Jacobi maps and Hecke functoriality."""

from importlib.resources import files

from .errors import PlecticError
from .groups import PlecticGroup
from .integration import PlecticCycle, integrate_riemann, integrate_series
from .jacobian import abel_jacobi, period_lattice
from .measures import invariant_measure_lattice
from .padic import PadicScalar, precision_policy

CONFIGS = files(__name__) / "configs"

__all__ = [
    "CONFIGS",
    "PadicScalar",
    "PlecticCycle",
    "PlecticError",
    "PlecticGroup",
    "abel_jacobi",
    "integrate_riemann",
    "integrate_series",
    "invariant_measure_lattice",
    "period_lattice",
    "precision_policy",
]
