"""Exact lattice-point geometry of centroid-zero convex bodies."""

from .exact import Q, qstr
from .polytope import HalfSpace, HRep, Polytope, Simplex, centroid, cube, ehrhart_simplex, volume
from .lattice import count, enumerate_lattice_points, lambda1
from .bounds import verify_prop1, verify_simplex_bound
from .planar import verify_thm3

__version__ = "0.1.0"

__all__ = [
    "HRep",
    "HalfSpace",
    "Polytope",
    "Q",
    "Simplex",
    "centroid",
    "count",
    "cube",
    "ehrhart_simplex",
    "enumerate_lattice_points",
    "lambda1",
    "qstr",
    "verify_prop1",
    "verify_simplex_bound",
    "verify_thm3",
    "volume",
]
