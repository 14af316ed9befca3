"""Polygon presentations of dilation and affine surfaces: cone data,
holonomy, framings and component classification."""

__version__ = "0.1.0"

from .errors import DilatkitError  # noqa: E402
from .surface import (  # noqa: E402
    ConePoint, DilationSurface, SurfaceSpec, build_surface, check_gauss_bonnet,
    cone_points, diagnose, euler_data,
)
from .corpus import (  # noqa: E402
    chamber_surface, octagon, regular_2n_gon, square_torus, troyanov_family,
)
from .holonomy import (  # noqa: E402
    CharValue, HolonomyData, HomologyBasis, Order, Period, PeriodVector, character,
    exponential_action, flat_projection, holonomy_kind, homology_basis, torsor_difference,
)
from .curves import CurvePath, Segment  # noqa: E402
from .framing import (  # noqa: E402
    Framing, arf, boundary_turning, concat_turning, develop_path, framing_vector,
    integral_action, turning_number, twist_framing,
)
from .classify import (  # noqa: E402
    OrbitClass, StratumSignature, component_count, enumerate_orbits_bfs, phi, same_orbit,
)

__all__ = [
    "ConePoint", "DilationSurface", "SurfaceSpec", "build_surface", "check_gauss_bonnet",
    "cone_points", "diagnose", "euler_data", "chamber_surface", "octagon",
    "regular_2n_gon", "square_torus", "troyanov_family", "CharValue", "HolonomyData",
    "HomologyBasis", "Order", "Period", "PeriodVector", "character", "exponential_action",
    "flat_projection", "holonomy_kind", "homology_basis", "torsor_difference", "CurvePath",
    "Segment", "Framing", "arf", "boundary_turning", "concat_turning", "develop_path",
    "framing_vector", "integral_action", "turning_number", "twist_framing", "OrbitClass",
    "StratumSignature", "component_count", "enumerate_orbits_bfs", "phi", "same_orbit",
    "DilatkitError",
]
