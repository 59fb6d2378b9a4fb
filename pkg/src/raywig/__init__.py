"""Geometric phase on quantum ray space and lifts of ray-space isometries."""

from ._validation import Tolerances, default_tolerances
from .estimator import WignerLift
from .exceptions import *  # noqa: F401,F403
from .geometry import (
    BargmannInvariant,
    GeodesicSegment,
    GeodesicTriangle,
    bargmann_invariant,
    cos_beta_from_triangle,
    discrete_lift,
    geodesic_segment,
    horizontal_geodesic,
    in_phase,
    loop_holonomy,
    pancharatnam_lift,
    sample_geodesic,
    triangle_geometry,
    triangle_report,
)
from .hilbert import (
    Ray,
    haar_unitary,
    inner_product,
    overlap,
    project_to_ray,
    random_state,
    random_states,
    ray_distance,
)
from .isometry import (
    CallableRayMap,
    ChiKind,
    CompositeRayMap,
    LiftedSymmetry,
    MatrixRayMap,
    PointwiseLift,
    RayMap,
    TableRayMap,
    determine_chi,
    imdelta_deformation_check,
    is_isometry_sampled,
    lift_fidelity,
    pointwise_lift,
    verify_w1_w2,
    wigner_lift,
)
from .poincare import (
    ORIENTATION_SIGN,
    bloch_map,
    check_half_solid_angle,
    monte_carlo_solid_angle,
    small_circle_limit,
    small_circle_phase,
    solid_angle,
)

__version__ = "0.1.0"
