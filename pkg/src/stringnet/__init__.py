"""Exact string-net and Turaev-Viro state spaces for small spherical fusion categories."""

from .category import FusionCategory, builtin, load_category, total_dim_squared, validate
from .graph import EmbeddedGraph, evaluate
from .homspaces import HomVector, rotate, trees
from .morphisms import Mor, Obj
from .surfaces import PLCWComplex, parse_surface_spec, standard_surface
from .tube import TubeAlgebra, compute_center, punctured_sphere_dim
from .tv import tv_dimension, tv_report

__all__ = [
    "FusionCategory", "builtin", "load_category", "total_dim_squared", "validate",
    "EmbeddedGraph", "evaluate", "HomVector", "rotate", "trees", "Mor", "Obj",
    "PLCWComplex", "parse_surface_spec", "standard_surface",
    "TubeAlgebra", "compute_center", "punctured_sphere_dim", "tv_dimension", "tv_report",
]
