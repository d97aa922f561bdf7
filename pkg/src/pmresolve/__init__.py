"""Combinatorial resolution of singularities of oriented pseudo-manifolds."""
from .complex_core import PseudoManifold, SimplicialComplex
from .labeling import GoodLabeling, ensure_good
from .states import Resolver

__all__ = ["PseudoManifold", "SimplicialComplex", "GoodLabeling", "ensure_good", "Resolver"]
__version__ = "0.1.0"
