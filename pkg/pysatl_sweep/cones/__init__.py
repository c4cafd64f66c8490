from .cone import (
    MAX_GENERATORS,
    ConeProjection,
    GeneratedCone,
    PolarDecomposition,
    nnls_cone_project,
    polar_decompose,
)
from .hull import HullPoint, min_norm_in_hull
from .polyhedron import Polyhedron, PolyhedronProjection, polyhedron_project

__all__ = [
    "MAX_GENERATORS",
    "ConeProjection",
    "GeneratedCone",
    "HullPoint",
    "PolarDecomposition",
    "Polyhedron",
    "PolyhedronProjection",
    "min_norm_in_hull",
    "nnls_cone_project",
    "polar_decompose",
    "polyhedron_project",
]
