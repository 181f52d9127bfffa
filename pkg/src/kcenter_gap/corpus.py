"""Named fixture instances and the seeded corpus used by the test suite."""

from __future__ import annotations

import itertools
from typing import List, Tuple

from .csp import GeqCspInstance, random_instance
from .reduction import build

# two adjacent variables, delta = 1: satisfiable by the constant assignment
S1 = GeqCspInstance(d=2, N=2, delta=1, variables=[(1, 1), (2, 1)], unary=[[(1, 1)], [(1, 1)]])

# the only candidate pair violates 1 >= 2 on axis 1
U1 = GeqCspInstance(d=2, N=2, delta=2, variables=[(1, 1), (2, 1)], unary=[[(1, 1)], [(2, 2)]])

# one variable with an empty relation
E1 = GeqCspInstance(
    d=2, N=2, delta=2, variables=[(1, 1), (2, 1)], unary=[[(2, 1), (2, 2)], []]
)

FIXTURES = {"S1": S1, "U1": U1, "E1": E1}


def standard_corpus(
    dims=(2, 3), deltas=(1, 2, 3), sizes=(1, 2, 3, 4), per_cell: int = 3, max_points: int = 40
) -> List[Tuple[str, GeqCspInstance]]:
    """Seeded instances over every (d, delta, |V|) cell, plus the fixtures.

    Relations are sparse enough to keep each reduced point set at or below
    ``max_points``, which keeps exhaustive k-Center enumeration cheap.
    """
    out = list(FIXTURES.items())
    for d, delta, nv in itertools.product(dims, deltas, sizes):
        density = 0.85 if delta == 1 else min(1.0, 2.2 / delta**d)
        found = 0
        for seed in itertools.count(1000 * nv):
            instance = random_instance(d, 3, delta, nv, density, seed)
            if len(build(instance)) > max_points:
                continue
            out.append((f"d{d}-delta{delta}-v{nv}-s{seed}", instance))
            found += 1
            if found == per_cell:
                break
    return out
