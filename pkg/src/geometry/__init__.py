"""
Convex geometry: norm specifications, affine subspaces, outcome bodies and
their sections, distances between convex sets, and the sine estimators used
by the S certificate.
"""

from .affine import AffineSubspace
from .bodies import (
    BODY_CONFIG,
    Ball,
    ConeBall,
    ConvexBody,
    Polytope,
    Segment,
    SimplexOfLabels,
    body_from_dict,
    body_to_dict,
    sphere_points,
)
from .distances import (
    dist_between_convex,
    dist_point_to_affine,
    l1_dist_to_simplex,
    min_norm_on_affine,
)
from .norms import (
    L1Norm,
    L2Norm,
    LInfNorm,
    MaxOfBlocks,
    NormSpec,
    PolytopeHull,
    SumOfBlocks,
    add_norm_bound,
    is_euclidean,
    is_polyhedral,
    l2_weights,
    norm_eval,
    norm_from_dict,
    norm_subgradient,
    norm_to_dict,
)
from .sections import BodySection
from .sine import (
    SINE_CONFIG,
    sine_ball,
    sine_bruteforce,
    sine_chain,
    sine_principal_angles,
    sine_prob_system,
    sine_simplex_lb,
)

__all__ = [
    # affine.py
    "AffineSubspace",
    # bodies.py
    "BODY_CONFIG",
    "Ball",
    "ConeBall",
    "ConvexBody",
    "Polytope",
    "Segment",
    "SimplexOfLabels",
    "body_from_dict",
    "body_to_dict",
    "sphere_points",
    # distances.py
    "dist_between_convex",
    "dist_point_to_affine",
    "l1_dist_to_simplex",
    "min_norm_on_affine",
    # norms.py
    "L1Norm",
    "L2Norm",
    "LInfNorm",
    "MaxOfBlocks",
    "NormSpec",
    "PolytopeHull",
    "SumOfBlocks",
    "add_norm_bound",
    "is_euclidean",
    "is_polyhedral",
    "l2_weights",
    "norm_eval",
    "norm_from_dict",
    "norm_subgradient",
    "norm_to_dict",
    # sections.py
    "BodySection",
    # sine.py
    "SINE_CONFIG",
    "sine_ball",
    "sine_bruteforce",
    "sine_chain",
    "sine_principal_angles",
    "sine_prob_system",
    "sine_simplex_lb",
]
