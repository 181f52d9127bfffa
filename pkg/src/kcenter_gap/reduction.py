"""Compile a grid CSP into a labelled discrete k-Center point set.

For every variable ``a`` the construction places

* ``2d`` border points, one pair flanking ``a`` along each axis,
* one core point ``a + eps * x`` per allowed value ``x``,

and for every grid edge ``(a, a + e_i)`` a run of ``delta`` secondary points
on the segment between the two variables.  With ``k = |V|`` centres the
optimum is below ``2r`` for satisfiable inputs and at least ``2r(1 + eps)``
otherwise.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .csp import DomainValue, GeqCspInstance, GridVariable, check_valid, constraint_edges, shift
from .exact_geometry import Point, approx, rational_from_str, rational_to_str

R = Fraction(1, 4)


@dataclass(frozen=True)
class ReductionParams:
    d: int
    delta: int
    r: Fraction
    epsilon: Fraction

    @property
    def threshold_sq(self) -> Fraction:
        """(2r)^2: satisfiable instances have optimum strictly below it."""
        return (2 * self.r) ** 2

    @property
    def gap_threshold_sq(self) -> Fraction:
        """(2r(1 + eps))^2: unsatisfiable instances reach at least this."""
        return (2 * self.r * (1 + self.epsilon)) ** 2


def make_params(d: int, delta: int) -> ReductionParams:
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    if delta < 1:
        raise ValueError(f"delta must be >= 1, got {delta}")
    eps = R * R / ((d - 1) * delta * delta)
    params = ReductionParams(d=d, delta=delta, r=R, epsilon=eps)
    assert 0 < eps <= eps * delta <= eps * delta**2 <= (d - 1) * eps * delta**2 == R * R
    assert eps >= Fraction(1, 16 * (d - 1) * delta**d)
    return params


@dataclass(frozen=True)
class Border:
    a: GridVariable
    axis: int
    sign: int  # +1 or -1

    kind = "border"


@dataclass(frozen=True)
class Core:
    a: GridVariable
    x: DomainValue

    kind = "core"


@dataclass(frozen=True)
class Secondary:
    """``ell``-th point on the segment from ``a`` to ``a2 = a + e_axis``."""

    a: GridVariable
    a2: GridVariable
    ell: int

    kind = "secondary"

    @property
    def axis(self) -> int:
        for j, (p, q) in enumerate(zip(self.a, self.a2)):
            if p != q:
                return j + 1
        raise ValueError("degenerate secondary label")

    @property
    def pair(self) -> frozenset:
        return frozenset((self.a, self.a2))


@dataclass(frozen=True)
class Plain:
    """Label for points of a hand-built instance that is not a reduction output."""

    name: int

    kind = "plain"


Label = Union[Border, Core, Secondary, Plain]


def _at(a: GridVariable) -> Point:
    return tuple(Fraction(c) for c in a)


def border_points(a: GridVariable, params: ReductionParams) -> List[Tuple[Border, Point]]:
    r, eps, delta = params.r, params.epsilon, params.delta
    along = r * (1 - eps)
    across = 2 * eps * delta
    out = []
    for axis in range(1, params.d + 1):
        for sign in (1, -1):
            coords = tuple(
                Fraction(c) + sign * (along if j == axis - 1 else across) for j, c in enumerate(a)
            )
            out.append((Border(tuple(a), axis, sign), coords))
    return out


def core_points(
    a: GridVariable, relation: Sequence[DomainValue], params: ReductionParams
) -> List[Tuple[Core, Point]]:
    eps = params.epsilon
    return [
        (Core(tuple(a), tuple(x)), tuple(Fraction(c) + eps * v for c, v in zip(a, x)))
        for x in relation
    ]


def secondary_points(
    a: GridVariable, a2: GridVariable, params: ReductionParams
) -> List[Tuple[Secondary, Point]]:
    diff = [q - p for p, q in zip(a, a2)]
    if len(a) != len(a2) or sorted(diff) != [0] * (len(a) - 1) + [1]:
        raise ValueError(f"{a2} is not {a} shifted by +1 along one axis")
    axis = diff.index(1) + 1
    r, eps = params.r, params.epsilon
    out = []
    for ell in range(1, params.delta + 1):
        offset = (1 - eps) * 2 * r + eps * ell
        coords = tuple(Fraction(c) + (offset if j == axis - 1 else 0) for j, c in enumerate(a))
        out.append((Secondary(tuple(a), tuple(a2), ell), coords))
    return out


@dataclass(frozen=True)
class KCenterInstance:
    d: int
    k: int
    params: ReductionParams
    labels: Tuple[Label, ...]
    points: Tuple[Point, ...]

    def __len__(self) -> int:
        return len(self.points)

    def index(self) -> Dict[Label, int]:
        return {label: j for j, label in enumerate(self.labels)}

    def variables(self) -> List[GridVariable]:
        """Grid variables, read off the border labels, in first-seen order."""
        seen: Dict[GridVariable, None] = {}
        for label in self.labels:
            if isinstance(label, Border):
                seen.setdefault(label.a)
        return list(seen)


    def sq_distance_matrix(self):
        """Integer matrix ``M`` and scale ``s`` with squared distance ``M[i, j] / s**2``.

        All coordinates are brought to a common denominator ``s``, which turns
        every squared distance into an integer numerator.  numpy int64 is used
        when the largest entry fits, Python ints (object dtype) otherwise.
        """
        import math

        import numpy as np

        s = 1
        for p in self.points:
            for c in p:
                s = s * c.denominator // math.gcd(s, c.denominator)
        ints = [[int(c * s) for c in p] for p in self.points]
        span = [max(col) - min(col) for col in zip(*ints)] if ints else []
        bound = sum(w * w for w in span)
        dtype = np.int64 if bound < 2**62 else object
        arr = np.array(ints, dtype=dtype).reshape(len(ints), self.d)
        diff = arr[:, None, :] - arr[None, :, :]
        return (diff * diff).sum(axis=2), s


def point_instance(points, k: int, params: Optional[ReductionParams] = None) -> KCenterInstance:
    """Wrap raw points as an instance; thresholds default to those of d = 2, delta = 1."""
    pts = tuple(tuple(Fraction(c) for c in p) for p in points)
    d = len(pts[0])
    params = params or make_params(2, 1)
    labels = tuple(Plain(j) for j in range(len(pts)))
    return KCenterInstance(d=d, k=k, params=params, labels=labels, points=pts)


def build(instance: GeqCspInstance) -> KCenterInstance:
    check_valid(instance)
    if instance.kind != "geq":
        raise ValueError("the reduction takes a geq instance; convert with leq_to_geq first")
    params = make_params(instance.d, instance.delta)
    pairs: List[Tuple[Label, Point]] = []
    for a, rel in zip(instance.variables, instance.unary):
        pairs.extend(border_points(a, params))
        pairs.extend(core_points(a, rel, params))
    edges = constraint_edges(instance)
    for a, a2, _ in edges:
        pairs.extend(secondary_points(a, a2, params))

    labels = tuple(label for label, _ in pairs)
    points = tuple(p for _, p in pairs)
    expected = (
        len(instance.variables) * 2 * instance.d
        + sum(len(rel) for rel in instance.unary)
        + instance.delta * len(edges)
    )
    if len(set(labels)) != len(labels) or len(points) != expected:
        raise ValueError("construction produced duplicate labels")
    if len(set(points)) != len(points):
        seen = {}
        for label, p in pairs:
            if p in seen:
                raise ValueError(f"coordinate collision between {seen[p]} and {label}")
            seen[p] = label
    return KCenterInstance(
        d=instance.d, k=len(instance.variables), params=params, labels=labels, points=points
    )


# JSON wire format


def label_to_json(label: Label) -> dict:
    if isinstance(label, Border):
        return {"type": "border", "a": list(label.a), "axis": label.axis,
                "sign": "+" if label.sign > 0 else "-"}
    if isinstance(label, Core):
        return {"type": "core", "a": list(label.a), "x": list(label.x)}
    if isinstance(label, Secondary):
        return {"type": "secondary", "a": list(label.a), "a2": list(label.a2), "ell": label.ell}
    return {"type": "plain", "name": label.name}


def label_from_json(data: dict) -> Label:
    kind = data["type"]
    if kind == "plain":
        return Plain(int(data["name"]))
    a = tuple(int(c) for c in data["a"])
    if kind == "border":
        if data["sign"] not in ("+", "-"):
            raise ValueError(f"bad border sign {data['sign']!r}")
        return Border(a, int(data["axis"]), 1 if data["sign"] == "+" else -1)
    if kind == "core":
        return Core(a, tuple(int(c) for c in data["x"]))
    if kind == "secondary":
        return Secondary(a, tuple(int(c) for c in data["a2"]), int(data["ell"]))
    raise ValueError(f"unknown label type {kind!r}")


def label_str(label: Label) -> str:
    if isinstance(label, Border):
        return f"B{list(label.a)}^{'+' if label.sign > 0 else '-'}{label.axis}"
    if isinstance(label, Core):
        return f"C{list(label.a)}^{list(label.x)}"
    if isinstance(label, Plain):
        return f"P{label.name}"
    # the pair is unordered for display
    return f"S{{{list(label.a)},{list(label.a2)}}}^{label.ell}"


def to_json(kc: KCenterInstance) -> dict:
    return {
        "kind": "kcenter",
        "d": kc.d,
        "k": kc.k,
        "delta": kc.params.delta,
        "r": rational_to_str(kc.params.r),
        "epsilon": rational_to_str(kc.params.epsilon),
        "points": [
            {"label": label_to_json(label), "coords": [rational_to_str(c) for c in p],
             "approx": approx(p)}
            for label, p in zip(kc.labels, kc.points)
        ],
    }


def from_json(data: dict) -> KCenterInstance:
    """Read a point-set document; ``approx`` is ignored."""
    if data.get("kind") != "kcenter":
        raise ValueError(f"not a point-set document: kind={data.get('kind')!r}")
    d = int(data["d"])
    r = rational_from_str(data["r"])
    eps = rational_from_str(data["epsilon"])
    delta = int(data.get("delta", 0))
    params = ReductionParams(d=d, delta=delta, r=r, epsilon=eps)
    labels = tuple(label_from_json(p["label"]) for p in data["points"])
    points = tuple(tuple(rational_from_str(c) for c in p["coords"]) for p in data["points"])
    if any(len(p) != d for p in points):
        raise ValueError("point dimension does not match d")
    if len(set(labels)) != len(labels):
        raise ValueError("duplicate labels in point set")
    return KCenterInstance(d=d, k=int(data["k"]), params=params, labels=labels, points=points)


def dumps(kc: KCenterInstance) -> str:
    return json.dumps(to_json(kc), indent=1)
