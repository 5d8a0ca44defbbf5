"""Generalized orthocenters of triangles in R^n.

Exact rational verification for the euclidean norm, numerical checks for
p-norms. See :mod:`ndortho.orthocenter` for the main constructions.
"""

from .affine import AffineSubspace, Homothety, PointReflection, collinear, cross_ratio, point_reflect
from .minkowski import EquidistantProblem, equidistant_solve, verify_under_norm
from .numcore import EUCLIDEAN, EXACT, FLOAT, FloatBackend, GeometryError, NormSpec, dot, norm, norm_sq
from .orthocenter import OrthoConfig, classical_orthocenter, configure, orthocenter_at, orthocenter_set
from .orthosys import OrthocentricSystem, derived_systems, is_orthocentric, tetrahedron_altitudes_concur
from .report import analyze_scene
from .scene import Scene, load_scene
from .triangle import Sphere, Triangle, centroid, circumcenter_inplane, circumlocus, midpoints

__version__ = "0.1.0"

__all__ = [
    "AffineSubspace", "Homothety", "PointReflection", "collinear", "cross_ratio", "point_reflect",
    "EUCLIDEAN", "EXACT", "FLOAT", "FloatBackend", "GeometryError", "NormSpec", "dot", "norm",
    "norm_sq", "OrthoConfig", "classical_orthocenter", "configure", "orthocenter_at",
    "orthocenter_set", "OrthocentricSystem", "derived_systems", "is_orthocentric",
    "tetrahedron_altitudes_concur", "Sphere", "Triangle", "centroid", "circumcenter_inplane",
    "circumlocus", "midpoints", "EquidistantProblem", "equidistant_solve", "verify_under_norm",
    "analyze_scene", "Scene", "load_scene",
]
