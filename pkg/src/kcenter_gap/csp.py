"""Geometric CSPs on the d-dimensional grid.

Variables are vertices of the grid [N]^d, values are vectors in [delta]^d and
each variable carries an arbitrary unary relation.  Binary constraints are
never stored: whenever ``a`` and ``a + e_i`` are both variables the pair must
satisfy ``f(a)[i] >= f(a + e_i)[i]`` (kind ``"geq"``) or ``<=`` (kind ``"leq"``).

Axes are numbered from 1 throughout, like grid coordinates.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

GridVariable = Tuple[int, ...]
DomainValue = Tuple[int, ...]
Assignment = Dict[GridVariable, DomainValue]
Edge = Tuple[GridVariable, GridVariable, int]

KINDS = ("geq", "leq")


class InvalidInstanceError(ValueError):
    pass


@dataclass(frozen=True)
class GeqCspInstance:
    """A grid CSP.  ``unary[j]`` is the relation of ``variables[j]``."""

    d: int
    N: int
    delta: int
    variables: Tuple[GridVariable, ...]
    unary: Tuple[Tuple[DomainValue, ...], ...]
    kind: str = "geq"

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(tuple(v) for v in self.variables))
        object.__setattr__(self, "unary", tuple(tuple(tuple(x) for x in rel) for rel in self.unary))

    @property
    def relations(self) -> Dict[GridVariable, Tuple[DomainValue, ...]]:
        return dict(zip(self.variables, self.unary))

    def domain(self) -> Iterator[DomainValue]:
        """All of [delta]^d in lexicographic order."""
        return itertools.product(range(1, self.delta + 1), repeat=self.d)


def validate(instance: GeqCspInstance) -> List[str]:
    """Return the list of violations; an empty list means the instance is valid."""
    problems = []
    d, N, delta = instance.d, instance.N, instance.delta
    if instance.kind not in KINDS:
        problems.append(f"unknown kind {instance.kind!r}")
    if d < 2:
        problems.append(f"dimension must be >= 2, got {d}")
    if N < 1:
        problems.append(f"grid side N must be >= 1, got {N}")
    if delta < 1:
        problems.append(f"delta must be >= 1, got {delta}")
    if len(instance.unary) != len(instance.variables):
        problems.append(
            f"{len(instance.variables)} variables but {len(instance.unary)} unary relations"
        )
    seen = set()
    for a in instance.variables:
        if len(a) != d:
            problems.append(f"variable {a} has dimension {len(a)}, expected {d}")
        elif not all(1 <= c <= N for c in a):
            problems.append(f"variable outside grid: {a} not in [{N}]^{d}")
        if a in seen:
            problems.append(f"duplicate variable {a}")
        seen.add(a)
    for a, rel in zip(instance.variables, instance.unary):
        if len(set(rel)) != len(rel):
            problems.append(f"duplicate value in relation of {a}")
        for x in rel:
            if len(x) != d:
                problems.append(f"value {x} of {a} has dimension {len(x)}, expected {d}")
            elif not all(1 <= c <= delta for c in x):
                problems.append(f"domain value out of range: {x} of {a} not in [{delta}]^{d}")
    return problems


def check_valid(instance: GeqCspInstance) -> None:
    problems = validate(instance)
    if problems:
        raise InvalidInstanceError("; ".join(problems))


def shift(a: GridVariable, axis: int, step: int = 1) -> GridVariable:
    return tuple(c + step if j == axis - 1 else c for j, c in enumerate(a))


def constraint_edges(instance: GeqCspInstance) -> List[Edge]:
    """Grid edges ``(a, a + e_i, i)`` with both endpoints in the variable set."""
    present = set(instance.variables)
    edges = []
    for a in instance.variables:
        for axis in range(1, instance.d + 1):
            b = shift(a, axis)
            if b in present:
                edges.append((a, b, axis))
    return edges


def _edge_ok(kind: str, x: DomainValue, y: DomainValue, axis: int) -> bool:
    if kind == "geq":
        return x[axis - 1] >= y[axis - 1]
    return x[axis - 1] <= y[axis - 1]


def is_satisfying(instance: GeqCspInstance, f: Assignment) -> bool:
    if set(f) != set(instance.variables) or len(f) != len(instance.variables):
        raise ValueError("assignment is not defined on exactly the instance's variables")
    for a, rel in zip(instance.variables, instance.unary):
        if tuple(f[a]) not in rel:
            return False
    return all(_edge_ok(instance.kind, f[a], f[b], axis) for a, b, axis in constraint_edges(instance))


def solve(instance: GeqCspInstance) -> Optional[Assignment]:
    """Backtracking search; returns the first solution or None.

    Variables are visited in row-major order, values lexicographically, so the
    answer is the lexicographically first satisfying assignment.
    """
    check_valid(instance)
    order = sorted(instance.variables)
    relations = instance.relations
    # constraints against earlier variables in the visiting order
    earlier: Dict[GridVariable, List[Tuple[GridVariable, int, bool]]] = {a: [] for a in order}
    position = {a: j for j, a in enumerate(order)}
    for a, b, axis in constraint_edges(instance):
        if position[a] < position[b]:
            earlier[b].append((a, axis, False))
        else:
            earlier[a].append((b, axis, True))
    candidates = {a: sorted(relations[a]) for a in order}
    f: Assignment = {}

    def consistent(a, x):
        for other, axis, a_is_low in earlier[a]:
            y = f[other]
            ok = _edge_ok(instance.kind, x, y, axis) if a_is_low else _edge_ok(instance.kind, y, x, axis)
            if not ok:
                return False
        return True

    def backtrack(depth):
        if depth == len(order):
            return True
        a = order[depth]
        for x in candidates[a]:
            if consistent(a, x):
                f[a] = x
                if backtrack(depth + 1):
                    return True
                del f[a]
        return False

    if backtrack(0):
        return {a: f[a] for a in instance.variables}
    return None


def count_assignments(instance: GeqCspInstance) -> int:
    return (instance.delta ** instance.d) ** len(instance.variables)


def enumerate_solutions(instance: GeqCspInstance, limit: int = 10**6) -> Iterator[Assignment]:
    """Brute force over every function V -> [delta]^d; an oracle for :func:`solve`."""
    total = count_assignments(instance)
    if total > limit:
        raise ValueError(f"{total} assignments exceed the enumeration limit {limit}")
    values = list(instance.domain())
    for combo in itertools.product(values, repeat=len(instance.variables)):
        f = dict(zip(instance.variables, combo))
        if is_satisfying(instance, f):
            yield f


def reflect(instance: GeqCspInstance) -> GeqCspInstance:
    """Swap the constraint direction, mapping every value x to delta + 1 - x.

    ``x[i] <= y[i]`` holds exactly when the reflected values satisfy ``>=``, so
    satisfiability is preserved.  Applying it twice returns the input.
    """
    top = instance.delta + 1
    unary = tuple(tuple(tuple(top - c for c in x) for x in rel) for rel in instance.unary)
    kind = "geq" if instance.kind == "leq" else "leq"
    return GeqCspInstance(instance.d, instance.N, instance.delta, instance.variables, unary, kind)


def leq_to_geq(instance: GeqCspInstance) -> GeqCspInstance:
    if instance.kind != "leq":
        raise ValueError(f"expected a leq instance, got kind {instance.kind!r}")
    return reflect(instance)


def random_instance(
    d: int,
    N: int,
    delta: int,
    num_vars: int,
    density: float,
    seed: int,
    kind: str = "geq",
) -> GeqCspInstance:
    """Seeded random instance on a connected patch of the grid.

    Variables grow from a random start vertex by repeatedly adding a random
    grid neighbour of the patch.  Each value of [delta]^d enters a relation
    independently with probability ``density``.
    """
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    if N < 1 or delta < 1 or num_vars < 1:
        raise ValueError("N, delta and num_vars must be positive")
    if num_vars > N**d:
        raise ValueError(f"num_vars={num_vars} exceeds the {N**d} grid vertices")
    if not 0.0 <= density <= 1.0:
        raise ValueError(f"density must lie in [0, 1], got {density}")
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    rng = random.Random(seed)
    start = tuple(rng.randint(1, N) for _ in range(d))
    chosen = [start]
    present = {start}
    while len(chosen) < num_vars:
        frontier = sorted(
            {
                b
                for a in chosen
                for axis in range(1, d + 1)
                for step in (1, -1)
                for b in [shift(a, axis, step)]
                if all(1 <= c <= N for c in b) and b not in present
            }
        )
        b = rng.choice(frontier)
        chosen.append(b)
        present.add(b)
    variables = tuple(sorted(chosen))
    values = list(itertools.product(range(1, delta + 1), repeat=d))
    unary = tuple(tuple(x for x in values if rng.random() < density) for _ in variables)
    return GeqCspInstance(d, N, delta, variables, unary, kind)


def summary(instance: GeqCspInstance) -> Dict[str, int]:
    return {
        "variables": len(instance.variables),
        "edges": len(constraint_edges(instance)),
        "unary_values": sum(len(rel) for rel in instance.unary),
    }


# JSON wire format


def to_json(instance: GeqCspInstance) -> dict:
    return {
        "kind": f"{instance.kind}-csp",
        "d": instance.d,
        "N": instance.N,
        "delta": instance.delta,
        "variables": [list(a) for a in instance.variables],
        "unary": [[list(x) for x in rel] for rel in instance.unary],
    }


def from_json(data: dict) -> GeqCspInstance:
    try:
        kind = data["kind"]
        if kind not in ("geq-csp", "leq-csp"):
            raise InvalidInstanceError(f"not a CSP document: kind={kind!r}")
        instance = GeqCspInstance(
            d=int(data["d"]),
            N=int(data["N"]),
            delta=int(data["delta"]),
            variables=[tuple(int(c) for c in a) for a in data["variables"]],
            unary=[[tuple(int(c) for c in x) for x in rel] for rel in data["unary"]],
            kind=kind[:3],
        )
    except (KeyError, TypeError) as exc:
        raise InvalidInstanceError(f"malformed CSP document: {exc!r}") from exc
    check_valid(instance)
    return instance


def dumps(instance: GeqCspInstance) -> str:
    return json.dumps(to_json(instance), indent=1)
