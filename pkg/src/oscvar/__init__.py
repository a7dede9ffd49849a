"""Exact computational engine for oscillator representations of sl(n).

Subpackages by topic: ``poly`` and ``linalg`` carry the exact sparse
polynomial arithmetic and fraction-free echelon machinery; ``osc`` the
twisted representation, Laplacian, harmonic projection and degree
functions; ``filtration`` the module filtrations and their dual-route
construction; ``detvar`` the determinantal z-ring combinatorics;
``annihilator`` the graded annihilator kernels and the associated-variety
presentation; ``cli`` the batch command line.
"""

from .osc import Config

__all__ = ["Config"]
__version__ = "0.1.0"
