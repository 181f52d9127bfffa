"""Exact gap reduction from grid >=-CSPs to discrete Euclidean k-Center."""

from .csp import (
    GeqCspInstance,
    constraint_edges,
    is_satisfying,
    leq_to_geq,
    random_instance,
    solve,
    validate,
)
from .exact_geometry import Ordering, cmp_sq_dist, squared_distance
from .gap_verifier import (
    VerificationReport,
    centers_from_assignment,
    decode_assignment,
    verify,
    verify_gap,
    verify_lemmas,
)
from .kcenter import (
    BudgetExceededError,
    GapVerdict,
    covering_radius_sq,
    exact_solve,
    farthest_first,
    gap_decide,
)
from .reduction import KCenterInstance, ReductionParams, build, make_params

__all__ = [
    "BudgetExceededError",
    "GapVerdict",
    "GeqCspInstance",
    "KCenterInstance",
    "Ordering",
    "ReductionParams",
    "VerificationReport",
    "build",
    "centers_from_assignment",
    "cmp_sq_dist",
    "constraint_edges",
    "covering_radius_sq",
    "decode_assignment",
    "exact_solve",
    "farthest_first",
    "gap_decide",
    "is_satisfying",
    "leq_to_geq",
    "make_params",
    "random_instance",
    "solve",
    "squared_distance",
    "validate",
    "verify",
    "verify_gap",
    "verify_lemmas",
]
