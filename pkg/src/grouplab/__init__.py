"""Convolution algebra of finitely supported measures on countable groups."""
from .groups import (
    DirectProduct,
    Dihedral,
    FiniteAbelian,
    Group,
    HeisenbergModP,
    HeisenbergZ,
    Homomorphism,
    Lamplighter,
    ZD,
    cyclic,
    group_from_spec,
)
from .measures import Measure, cesaro, convolve, delta, l1_norm, lazy, power, pushforward, uniform

__version__ = "0.1.0"
