"""Face-wise (Plis/Demyanov) and Hausdorff distances between convex bodies,
strongly convex hulls, moduli of convexity and Steiner-point selections."""

from .bodies import (
    Ball,
    ConvexBody,
    DimensionMismatch,
    FacePoint,
    FaceSegment,
    FaceVertexSet,
    LinearImage,
    MinkowskiSum,
    Polytope,
    Translate,
    contains,
    diameter,
    ellipse,
    exposed_face,
    normal_angles,
    random_polygon,
    support,
)
from .metrics import (
    DistanceResult,
    SamplerSpec,
    demyanov_gradient_estimate,
    face_hausdorff,
    hausdorff,
    hausdorff_sampled,
    plis,
    plis_sampled,
)
from .selections import (
    NonSingletonFace,
    SelectionParams,
    gauss_gradient_steiner,
    selection_value,
    steiner_exact_polygon,
    steiner_point,
    steiner_quadrature,
)
from .strongconv import (
    ArcBody2D,
    EmptyIntersection,
    ModulusProfile,
    PointsTooSpread,
    arc_face,
    arc_support,
    ball_intersection_2d,
    modulus_ball_bound,
    modulus_estimate,
    rho_h_bound,
    sharp_bound_pair,
    strong_hull_2d,
)
from .approx import (
    HolderReport,
    ParametricFamily,
    argmax_selection,
    cauchy_demo,
    ellipse_divergence_demo,
    holder_estimate,
    smooth_approx,
    sup_gap_demo,
)

__version__ = "0.1.0"
