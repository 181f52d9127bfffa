import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kcenter_gap.corpus import E1, S1, U1
from kcenter_gap.csp import (
    GeqCspInstance,
    InvalidInstanceError,
    constraint_edges,
    count_assignments,
    enumerate_solutions,
    from_json,
    is_satisfying,
    leq_to_geq,
    random_instance,
    reflect,
    solve,
    to_json,
    validate,
)


def test_validate_ok():
    assert validate(GeqCspInstance(2, 2, 1, [(1, 1)], [[(1, 1)]])) == []


def test_validate_variable_outside_grid():
    problems = validate(GeqCspInstance(2, 2, 1, [(3, 1)], [[(1, 1)]]))
    assert any("variable outside grid" in p for p in problems)


def test_validate_dimension():
    problems = validate(GeqCspInstance(1, 2, 1, [(1,)], [[(1,)]]))
    assert any("dimension must be >= 2" in p for p in problems)


def test_validate_duplicates_and_domain():
    problems = validate(GeqCspInstance(2, 2, 2, [(1, 1), (1, 1)], [[(1, 3)], [(1, 1), (1, 1)]]))
    assert any("duplicate variable" in p for p in problems)
    assert any("out of range" in p for p in problems)
    assert any("duplicate value" in p for p in problems)


def test_constraint_edges():
    assert constraint_edges(S1) == [((1, 1), (2, 1), 1)]
    diag = GeqCspInstance(2, 2, 1, [(1, 1), (2, 2)], [[(1, 1)], [(1, 1)]])
    assert constraint_edges(diag) == []
    corner = GeqCspInstance(2, 2, 1, [(1, 1), (2, 1), (1, 2)], [[(1, 1)]] * 3)
    assert sorted(constraint_edges(corner)) == [((1, 1), (1, 2), 2), ((1, 1), (2, 1), 1)]


def test_edges_unique_and_unit_length():
    inst = random_instance(3, 3, 1, 15, 1.0, seed=4)
    edges = constraint_edges(inst)
    assert len({frozenset((a, b)) for a, b, _ in edges}) == len(edges)
    for a, b, axis in edges:
        assert sum(abs(p - q) for p, q in zip(a, b)) == 1
        assert b[axis - 1] - a[axis - 1] == 1


def test_is_satisfying_examples():
    assert is_satisfying(S1, {(1, 1): (1, 1), (2, 1): (1, 1)})
    two = GeqCspInstance(2, 2, 2, [(1, 1), (2, 1)], [[(1, 1), (2, 2)], [(1, 1), (2, 2)]])
    assert not is_satisfying(two, {(1, 1): (1, 1), (2, 1): (2, 2)})
    assert not is_satisfying(U1, {(1, 1): (2, 2), (2, 1): (2, 2)})  # unary violation
    with pytest.raises(ValueError):
        is_satisfying(S1, {(1, 1): (1, 1)})


def test_solve_examples():
    assert solve(S1) == {(1, 1): (1, 1), (2, 1): (1, 1)}
    assert solve(U1) is None
    assert solve(E1) is None


def test_solve_is_lexicographically_first():
    inst = random_instance(2, 3, 2, 4, 0.7, seed=11)
    sols = list(enumerate_solutions(inst))
    assert sols
    first = min(sols, key=lambda f: [f[a] for a in sorted(inst.variables)])
    assert solve(inst) == first


@settings(max_examples=60, deadline=None)
@given(
    d=st.integers(2, 3),
    delta=st.integers(1, 3),
    nv=st.integers(1, 4),
    density=st.sampled_from([0.2, 0.4, 0.7]),
    seed=st.integers(0, 10**6),
    kind=st.sampled_from(["geq", "leq"]),
)
def test_solve_agrees_with_enumeration(d, delta, nv, density, seed, kind):
    inst = random_instance(d, 3, delta, nv, density, seed, kind=kind)
    if count_assignments(inst) > 10**5:
        return
    f = solve(inst)
    if f is None:
        assert next(enumerate_solutions(inst), None) is None
    else:
        assert is_satisfying(inst, f)


def test_leq_to_geq_examples():
    leq = GeqCspInstance(2, 2, 1, [(1, 1), (2, 1)], [[(1, 1)], [(1, 1)]], kind="leq")
    out = leq_to_geq(leq)
    assert out.kind == "geq" and out.unary == leq.unary
    leq3 = GeqCspInstance(2, 2, 3, [(1, 1)], [[(1, 3)]], kind="leq")
    assert leq_to_geq(leq3).unary == (((3, 1),),)
    with pytest.raises(ValueError):
        leq_to_geq(S1)


@pytest.mark.parametrize("seed", range(10))
def test_reflect_is_involution(seed):
    inst = random_instance(2, 3, 3, 4, 0.4, seed, kind="leq")
    assert reflect(reflect(inst)) == inst


def test_random_instance_deterministic():
    assert random_instance(2, 3, 2, 4, 0.8, 7) == random_instance(2, 3, 2, 4, 0.8, 7)


def test_random_instance_full_grid():
    inst = random_instance(2, 3, 1, 9, 0.5, 3)
    assert set(inst.variables) == set(itertools.product(range(1, 4), repeat=2))


def test_random_instance_connected():
    inst = random_instance(3, 4, 1, 10, 0.5, 5)
    present = set(inst.variables)
    seen, todo = {inst.variables[0]}, [inst.variables[0]]
    while todo:
        a = todo.pop()
        for b in present:
            if b not in seen and sum(abs(p - q) for p, q in zip(a, b)) == 1:
                seen.add(b)
                todo.append(b)
    assert seen == present


@pytest.mark.parametrize("seed", range(5))
def test_full_density_is_satisfiable(seed):
    inst = random_instance(2, 3, 3, 5, 1.0, seed)
    assert all(len(rel) == 9 for rel in inst.unary)
    assert solve(inst) is not None
    assert is_satisfying(inst, {a: (1, 1) for a in inst.variables})


@pytest.mark.parametrize(
    "args",
    [(1, 3, 2, 2, 0.5, 0), (2, 3, 2, 100, 0.5, 0), (2, 3, 2, 2, 1.5, 0), (2, 3, 0, 2, 0.5, 0)],
)
def test_random_instance_rejects_bad_parameters(args):
    with pytest.raises(ValueError):
        random_instance(*args)


def test_json_round_trip():
    inst = random_instance(3, 3, 2, 4, 0.3, 9, kind="leq")
    assert from_json(to_json(inst)) == inst
    data = to_json(S1)
    assert data == {"kind": "geq-csp", "d": 2, "N": 2, "delta": 1,
                    "variables": [[1, 1], [2, 1]], "unary": [[[1, 1]], [[1, 1]]]}


def test_json_rejects_invalid():
    data = to_json(S1)
    data["variables"][0] = [3, 1]
    with pytest.raises(InvalidInstanceError):
        from_json(data)
    with pytest.raises(InvalidInstanceError):
        from_json({"kind": "geq-csp"})
