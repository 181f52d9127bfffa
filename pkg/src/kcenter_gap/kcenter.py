"""Exact discrete k-Center on small point sets.

Covering radii are carried squared as Fractions.  The brute-force solver
works on the integer distance matrix from
:meth:`KCenterInstance.sq_distance_matrix` and enumerates subsets in
lexicographic order, so the first optimum found is the reported one.
"""

from __future__ import annotations

import enum
import itertools
import math
from fractions import Fraction
from typing import Iterator, Sequence, Tuple

import numpy as np

from .exact_geometry import rational_to_str, squared_distance
from .reduction import KCenterInstance, label_to_json

CenterSet = Tuple[int, ...]

DEFAULT_BUDGET = 10**7
_CHUNK = 4096


class BudgetExceededError(RuntimeError):
    pass


class GapVerdict(enum.Enum):
    BELOW_2R = "Below2r"
    AT_LEAST_2R_EPS = "AtLeast2rEps"
    INDETERMINATE = "Indeterminate"


def check_centers(kc: KCenterInstance, centers: Sequence[int]) -> CenterSet:
    q = tuple(sorted(set(centers)))
    if not q:
        raise ValueError("center set is empty")
    if len(q) != len(centers):
        raise ValueError("center indices must be distinct")
    if q[0] < 0 or q[-1] >= len(kc):
        raise ValueError(f"center index out of range [0, {len(kc)})")
    return q


def covering_radius_sq(kc: KCenterInstance, centers: Sequence[int]) -> Fraction:
    """max over points of the squared distance to the nearest centre."""
    q = check_centers(kc, centers)
    chosen = [kc.points[j] for j in q]
    return max(min(squared_distance(p, c) for c in chosen) for p in kc.points)


def _check_k(kc: KCenterInstance, k: int) -> None:
    if not 1 <= k <= len(kc):
        raise ValueError(f"k={k} outside [1, n={len(kc)}]")


def subset_count(kc: KCenterInstance, k: int) -> int:
    return math.comb(len(kc), k)


def iter_subset_radii(
    kc: KCenterInstance, k: int, budget: int = DEFAULT_BUDGET
) -> Iterator[Tuple[np.ndarray, np.ndarray, int]]:
    """Yield ``(combos, radii, scale)`` chunks over all size-k subsets.

    ``combos`` rows are index tuples in lexicographic order and ``radii`` the
    matching squared covering radii as integers over ``scale**2``.
    """
    _check_k(kc, k)
    total = subset_count(kc, k)
    if total > budget:
        raise BudgetExceededError(f"C({len(kc)},{k}) = {total} subsets exceeds budget {budget}")
    dist, scale = kc.sq_distance_matrix()
    subsets = itertools.combinations(range(len(kc)), k)
    while True:
        block = list(itertools.islice(subsets, _CHUNK))
        if not block:
            return
        combos = np.array(block, dtype=np.intp)
        # dist[:, combos] has shape (n, m, k)
        radii = dist[:, combos].min(axis=2).max(axis=0)
        yield combos, radii, scale


def exact_solve(
    kc: KCenterInstance, k: int = None, budget: int = DEFAULT_BUDGET
) -> Tuple[CenterSet, Fraction]:
    """Optimal centre set by exhaustive enumeration, lexicographically first among ties."""
    k = kc.k if k is None else k
    best = None
    best_set = None
    scale = 1
    for combos, radii, scale in iter_subset_radii(kc, k, budget):
        j = int(np.argmin(radii))
        if best is None or radii[j] < best:
            best = radii[j]
            best_set = tuple(int(c) for c in combos[j])
    return best_set, Fraction(int(best), scale * scale)


def farthest_first(kc: KCenterInstance, k: int = None, start_index: int = 0) -> CenterSet:
    """Greedy farthest-point traversal; ties go to the smallest index."""
    k = kc.k if k is None else k
    _check_k(kc, k)
    if not 0 <= start_index < len(kc):
        raise ValueError(f"start_index {start_index} out of range")
    centers = [start_index]
    nearest = [squared_distance(p, kc.points[start_index]) for p in kc.points]
    while len(centers) < k:
        far = max(range(len(kc)), key=lambda j: (nearest[j], -j))
        if far in centers:
            # every point is already a centre at distance 0; fill with unused indices
            far = min(set(range(len(kc))) - set(centers))
        centers.append(far)
        c = kc.points[far]
        nearest = [min(old, squared_distance(p, c)) for old, p in zip(nearest, kc.points)]
    return tuple(sorted(centers))


def classify(kc: KCenterInstance, opt_sq: Fraction) -> GapVerdict:
    if opt_sq < kc.params.threshold_sq:
        return GapVerdict.BELOW_2R
    if opt_sq >= kc.params.gap_threshold_sq:
        return GapVerdict.AT_LEAST_2R_EPS
    return GapVerdict.INDETERMINATE


def gap_decide(kc: KCenterInstance, budget: int = DEFAULT_BUDGET) -> GapVerdict:
    _, opt_sq = exact_solve(kc, kc.k, budget)
    return classify(kc, opt_sq)


def result_to_json(kc: KCenterInstance, centers: Sequence[int], opt_sq: Fraction, method: str) -> dict:
    return {
        "k": len(centers),
        "centers": [label_to_json(kc.labels[j]) for j in centers],
        "opt_sq": rational_to_str(opt_sq),
        "method": method,
    }
