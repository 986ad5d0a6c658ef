"""Steiner symmetrization on the sphere: geometry core and experiment suite."""

from .errors import (
    ArgumentError,
    ConvergenceError,
    DegeneracyError,
    DomainError,
    InfeasibleError,
    NumericError,
    PreconditionError,
    SingularityError,
    SphaeraError,
)
from .regions import CapSpec, GeodesicPolygon, SphericalEllipse, circumdisk, convex_hull_s
from .sphere_core import Frame, PolarCoord, from_polar, to_polar
from .steiner import (
    SlabRegion,
    Trajectory,
    converge_to_cap,
    find_applicable_axis,
    steiner_symmetral,
    symmetral_to_polygon,
)

__version__ = "0.1.0"

__all__ = [
    "ArgumentError",
    "CapSpec",
    "ConvergenceError",
    "DegeneracyError",
    "DomainError",
    "Frame",
    "GeodesicPolygon",
    "InfeasibleError",
    "NumericError",
    "PolarCoord",
    "PreconditionError",
    "SingularityError",
    "SlabRegion",
    "SphaeraError",
    "SphericalEllipse",
    "Trajectory",
    "circumdisk",
    "converge_to_cap",
    "convex_hull_s",
    "find_applicable_axis",
    "from_polar",
    "steiner_symmetral",
    "symmetral_to_polygon",
    "to_polar",
]
