from fractions import Fraction as F

import pytest

from kcenter_gap.corpus import S1, U1
from kcenter_gap.csp import GeqCspInstance, InvalidInstanceError, random_instance
from kcenter_gap.reduction import (
    Border,
    Core,
    Secondary,
    border_points,
    build,
    core_points,
    from_json,
    make_params,
    secondary_points,
    to_json,
)


@pytest.mark.parametrize(
    "d, delta, eps", [(2, 1, F(1, 16)), (2, 2, F(1, 64)), (3, 2, F(1, 128))]
)
def test_make_params(d, delta, eps):
    params = make_params(d, delta)
    assert params.r == F(1, 4)
    assert params.epsilon == eps


def test_make_params_rejects_d1():
    with pytest.raises(ValueError):
        make_params(1, 2)


def test_border_points_example():
    pts = dict(border_points((1, 1), make_params(2, 1)))
    assert pts[Border((1, 1), 1, 1)] == (F(79, 64), F(9, 8))
    assert pts[Border((1, 1), 1, -1)] == (F(49, 64), F(7, 8))
    assert pts[Border((1, 1), 2, 1)] == (F(9, 8), F(79, 64))
    assert len(pts) == 4


def test_core_points_example():
    assert core_points((1, 1), [(1, 1)], make_params(2, 1)) == [
        (Core((1, 1), (1, 1)), (F(17, 16), F(17, 16)))
    ]
    assert core_points((1, 1), [(2, 1)], make_params(2, 2))[0][1] == (F(33, 32), F(65, 64))
    assert core_points((1, 1), [], make_params(2, 2)) == []


def test_secondary_points_example():
    (label, p), = secondary_points((1, 1), (2, 1), make_params(2, 1))
    assert label == Secondary((1, 1), (2, 1), 1) and label.axis == 1
    assert p == (F(49, 32), F(1))
    pts = secondary_points((1, 1), (2, 1), make_params(2, 2))
    # 1 + (63/64)(1/2) + l/64 for l = 1, 2
    assert [p for _, p in pts] == [(F(193, 128), F(1)), (F(195, 128), F(1))]


def test_secondary_points_requires_adjacency():
    with pytest.raises(ValueError):
        secondary_points((1, 1), (2, 2), make_params(2, 1))
    with pytest.raises(ValueError):
        secondary_points((2, 1), (1, 1), make_params(2, 1))


def test_build_counts():
    u1 = build(U1)
    assert (len(u1), u1.k) == (12, 2)
    s1 = build(S1)
    assert (len(s1), s1.k) == (11, 2)
    single = build(GeqCspInstance(3, 2, 2, [(1, 2, 1)], [[(2, 1, 2)]]))
    assert len(single) == 7 and not any(isinstance(l, Secondary) for l in single.labels)


def test_build_rejects_invalid():
    with pytest.raises(InvalidInstanceError):
        build(GeqCspInstance(2, 2, 1, [(3, 1)], [[(1, 1)]]))


@pytest.mark.parametrize("seed", range(8))
def test_build_partition_and_count(seed):
    inst = random_instance(3, 3, 2, 5, 0.3, seed)
    kc = build(inst)
    assert len(set(kc.labels)) == len(kc.labels)
    assert len(set(kc.points)) == len(kc.points)
    n_border = sum(isinstance(l, Border) for l in kc.labels)
    n_core = sum(isinstance(l, Core) for l in kc.labels)
    n_sec = sum(isinstance(l, Secondary) for l in kc.labels)
    edges = n_sec // inst.delta
    assert n_border == 2 * inst.d * len(inst.variables)
    assert n_core == sum(len(r) for r in inst.unary)
    assert len(kc) == n_border + n_core + n_sec
    # the coarser bound with |V|^2 * delta secondary points
    assert len(kc) <= len(inst.variables) * 2 * inst.d + n_core + len(inst.variables) ** 2 * inst.delta
    assert edges <= len(inst.variables) * inst.d


def test_sq_distance_matrix_matches_fractions():
    kc = build(random_instance(3, 3, 3, 3, 0.1, 5))
    dist, s = kc.sq_distance_matrix()
    from kcenter_gap.exact_geometry import squared_distance

    for i in range(0, len(kc), 3):
        for j in range(len(kc)):
            assert F(int(dist[i, j]), s * s) == squared_distance(kc.points[i], kc.points[j])


def test_point_set_json_round_trip():
    kc = build(U1)
    data = to_json(kc)
    assert data["r"] == "1/4" and data["epsilon"] == "1/64" and data["k"] == 2
    assert data["points"][0]["label"] == {"type": "border", "a": [1, 1], "axis": 1, "sign": "+"}
    back = from_json(data)
    assert back.labels == kc.labels and back.points == kc.points and back.params == kc.params


def test_point_set_json_ignores_approx():
    data = to_json(build(S1))
    for p in data["points"]:
        p["approx"] = [0.0] * len(p["approx"])
    assert from_json(data).points == build(S1).points
