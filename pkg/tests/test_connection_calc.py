from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from leibniz_cohomology.connection_calc import (
    Connection,
    DegenerateMetric,
    Metric,
    NotLeviCivita,
    NotSymmetric,
    Space,
    bracket_table_mismatches,
    covariant_derivative,
    curvature,
    decompose_affine,
    delta_nabla,
    flat_laplacian,
    hyperbolic_plane,
    laplace_beltrami,
    one_dim_formula,
    random_field,
    random_polynomial,
    ricci,
    rotation_field,
    round_sphere_chart,
    run_battery,
    scalar_curvature,
    verify_identity,
    vf_bracket,
)
from leibniz_cohomology.exact_linalg import DimensionMismatch
from leibniz_cohomology.lie_core import build_h_n

seeds = st.integers(0, 10 ** 6)


def _connection(space, rng, symmetric):
    """Random connection with rational Christoffel symbols."""
    n = space.n
    den = 1 + space.coordinates[0] ** 2
    gamma = [[[space.zero()] * n for _ in range(n)] for _ in range(n)]
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if symmetric and j < i:
                    gamma[k][i][j] = gamma[k][j][i]
                else:
                    gamma[k][i][j] = random_polynomial(space, 1, rng, span=2) / den
    return Connection(space, gamma, symmetric=symmetric)


# ---------------------------------------------------------------- fixed examples

def test_one_dim_bracket():
    line = Space(1)
    x = line.coordinates[0]
    X, D = line.vector_field([x]), line.partial(0)
    assert vf_bracket(X, D) == line.vector_field([-1])


def test_rotation_bracket_matches_lie_core():
    plane = Space(2)
    a12 = rotation_field(plane, 1, 2)
    assert vf_bracket(a12, plane.partial(0)) == plane.vector_field([0, -1])


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_bracket_cross_check(n):
    assert bracket_table_mismatches(build_h_n(n), n) == []


def test_decompose_rejects_non_affine():
    plane = Space(2)
    x1, _ = plane.coordinates
    assert decompose_affine(plane.vector_field([x1 ** 2, 0])) is None
    # basis of h_2: a_1_2, d_1, d_2
    assert decompose_affine(plane.partial(1)) == {2: Fraction(1)}
    assert decompose_affine(rotation_field(plane, 1, 2)) == {0: Fraction(1)}


def test_flat_covariant_derivative():
    line = Space(1)
    x = line.coordinates[0]
    C = Connection.flat(line)
    assert covariant_derivative(C, line.vector_field([x ** 2]), line.vector_field([x])) == line.vector_field([x ** 2])
    plane = Space(2)
    X = plane.vector_field([plane.coordinates[1], 3])
    assert covariant_derivative(Connection.flat(plane), X, plane.constant_field([2, -1])).is_zero()


def test_hyperbolic_christoffels_and_curvature():
    metric, C = hyperbolic_plane()
    s = C.space
    y = s.coordinates[1]
    assert C.gamma[0][0][1] == C.gamma[0][1][0] == -1 / y
    assert C.gamma[1][0][0] == 1 / y
    assert C.gamma[1][1][1] == -1 / y
    d1, d2 = s.partial(0), s.partial(1)
    assert covariant_derivative(C, d1, d1) == d2.scale(1 / y)
    assert curvature(C, d1, d2, d2) == d1.scale(-1 / y ** 2)
    assert C.compatible_with(metric)


def test_scalar_curvatures():
    metric, C = hyperbolic_plane()
    assert scalar_curvature(C, metric) == C.space.function(-2)
    metric, C = round_sphere_chart()
    assert scalar_curvature(C, metric) == C.space.function(2)
    flat = Space(3)
    assert scalar_curvature(Connection.flat(flat), Metric.euclidean(flat)) == flat.zero()


def test_one_dim_examples():
    line = Space(1)
    x = line.coordinates[0]
    f = x ** 3 + 2 * x
    d = line.partial(0)
    assert delta_nabla(Connection.flat(line), d, d, line.vector_field([f])) == line.vector_field([-6 * x])
    assert one_dim_formula(line, 1, 1, f) == line.vector_field([-6 * x])


def test_laplacian_example():
    plane = Space(2)
    x1, x2 = plane.coordinates
    f = x1 ** 3 * x2
    Z = plane.constant_field([Fraction(3, 5), Fraction(4, 5)])
    C = Connection.flat(plane)
    total = delta_nabla(C, plane.partial(0), plane.partial(0), Z.scale(f)) \
        + delta_nabla(C, plane.partial(1), plane.partial(1), Z.scale(f))
    assert total == Z.scale(-6 * x1 * x2)
    assert Metric.euclidean(plane).inner(total, Z) == -6 * x1 * x2


def test_flat_laplace_beltrami():
    space = Space(3)
    x1, x2, x3 = space.coordinates
    f = x1 ** 2 * x2 + x3 ** 3
    Z = space.partial(1).scale(f)
    assert laplace_beltrami(Connection.flat(space), Z) == space.partial(1).scale(-flat_laplacian(space, f))
    assert laplace_beltrami(Connection.flat(space), space.constant_field([1, 2, 3])).is_zero()


def test_identity_needs_symmetry():
    space = Space(2)
    C = Connection(space, {(0, 0, 1): 1})
    assert not C.is_symmetric
    with pytest.raises(NotSymmetric):
        verify_identity("trace", C, space.partial(0))
    with pytest.raises(NotSymmetric):
        Connection(space, {(0, 0, 1): 1}, symmetric=True)


def test_ricci_needs_levi_civita():
    metric, _ = hyperbolic_plane()
    with pytest.raises(NotLeviCivita):
        ricci(Connection.flat(metric.space), metric, metric.space.partial(0), metric.space.partial(0))


def test_bad_metric_and_dimensions():
    plane = Space(2)
    with pytest.raises(DegenerateMetric):
        Metric(plane, [[1, 1], [1, 1]])
    with pytest.raises(DegenerateMetric):
        Metric(plane, [[1, 2], [0, 1]])
    with pytest.raises(DimensionMismatch):
        vf_bracket(plane.partial(0), Space(3).partial(0))
    with pytest.raises(DimensionMismatch):
        Space(2).vector_field([1, 2, 3])


@pytest.mark.parametrize("identity", ["one_dim", "laplacian", "repeated_slot", "trace"])
def test_batteries(identity):
    for dim in (2, 3):
        report = run_battery(identity, dim=dim, degree=2, cases=4, seed=11)
        assert report.ok, report.dumps()


def test_battery_is_seeded():
    a = run_battery("one_dim", cases=3, seed=5).dumps()
    assert a == run_battery("one_dim", cases=3, seed=5).dumps()


# ---------------------------------------------------------------- properties

@settings(max_examples=15)
@given(seeds, st.booleans())
def test_leibniz_rule_and_left_linearity(seed, symmetric):
    rng = random.Random(seed)
    space = Space(2)
    C = _connection(space, rng, symmetric)
    X, Y = random_field(space, 2, rng), random_field(space, 2, rng)
    f = random_polynomial(space, 2, rng) / (1 + space.coordinates[1] ** 2)
    nab = lambda a, b: covariant_derivative(C, a, b)  # noqa: E731
    assert nab(X, Y.scale(f)) == Y.scale(X(f)) + nab(X, Y).scale(f)
    assert nab(X.scale(f), Y) == nab(X, Y).scale(f)


@settings(max_examples=15)
@given(seeds)
def test_symmetric_connection_is_torsion_free(seed):
    rng = random.Random(seed)
    space = Space(2)
    C = _connection(space, rng, True)
    X, Y = random_field(space, 2, rng), random_field(space, 2, rng)
    torsion = covariant_derivative(C, X, Y) - covariant_derivative(C, Y, X) - vf_bracket(X, Y)
    assert torsion.is_zero()


@settings(max_examples=10)
@given(seeds)
def test_curvature_is_function_linear(seed):
    rng = random.Random(seed)
    space = Space(2)
    C = _connection(space, rng, False)
    X, Y, Z = (random_field(space, 1, rng) for _ in range(3))
    f = random_polynomial(space, 1, rng)
    R = curvature(C, X, Y, Z)
    assert curvature(C, X.scale(f), Y, Z) == R.scale(f)
    assert curvature(C, X, Y.scale(f), Z) == R.scale(f)
    assert curvature(C, X, Y, Z.scale(f)) == R.scale(f)
    assert curvature(C, Y, X, Z) == -R


@settings(max_examples=20)
@given(seeds)
def test_bracket_antisymmetry_and_jacobi(seed):
    rng = random.Random(seed)
    space = Space(3)
    X, Y, Z = (random_field(space, 2, rng) for _ in range(3))
    assert vf_bracket(X, X).is_zero()
    assert vf_bracket(X, Y) == -vf_bracket(Y, X)
    jac = vf_bracket(X, vf_bracket(Y, Z)) + vf_bracket(Y, vf_bracket(Z, X)) + vf_bracket(Z, vf_bracket(X, Y))
    assert jac.is_zero()


@settings(max_examples=10)
@given(seeds)
def test_laplace_beltrami_is_additive(seed):
    rng = random.Random(seed)
    _, C = hyperbolic_plane()
    Z1, Z2 = random_field(C.space, 1, rng), random_field(C.space, 1, rng)
    assert laplace_beltrami(C, Z1 + Z2) == laplace_beltrami(C, Z1) + laplace_beltrami(C, Z2)


@settings(max_examples=10)
@given(seeds)
def test_identities_on_random_symmetric_connections(seed):
    rng = random.Random(seed)
    space = Space(2)
    C = _connection(space, rng, True)
    X, Z = random_field(space, 1, rng), random_field(space, 1, rng)
    assert verify_identity("repeated_slot", C, (X, Z)).holds
    assert verify_identity("trace", C, Z).holds
