"""Topological and group-theoretic analysis of contextuality constraint systems."""

from importlib.resources import files

from .arrangement import Arrangement, load_arrangement, parse_arrangement, serialize_arrangement
from .complex2 import CellComplex2, load_realization
from .homology import ClassicalSolution, Infeasible, solve_classical
from .limits import Limits
from .pauli import PauliOp, load_operators

__version__ = "0.1.0"


def fixture(name: str):
    """Path of a bundled example file, e.g. ``fixture("mermin_square.json")``."""
    return files(__name__) / "data" / name


__all__ = [
    "Arrangement",
    "CellComplex2",
    "ClassicalSolution",
    "Infeasible",
    "Limits",
    "PauliOp",
    "fixture",
    "load_arrangement",
    "load_operators",
    "load_realization",
    "parse_arrangement",
    "serialize_arrangement",
    "solve_classical",
]
