"""Numerical laboratory for noise-channel mutual-information functionals.

Desk-scale implementations and cross-checks of the information functionals
attached to correlated pairs in three settings: bit strings through a
memoryless flip channel, points on a sphere smoothed by the Poisson kernel,
and Gaussian vectors smoothed by the Ornstein-Uhlenbeck operator, together
with the rearrangement and big-sphere-limit machinery connecting them.
"""

__version__ = "0.1.0"

from . import entropy
from . import cube
from . import search
from . import sphere
from . import gauss

__all__ = ["entropy", "cube", "search", "sphere", "gauss", "__version__"]
