import numpy as np
import pytest
from hypothesis import given, strategies as st

from sciswarm.errors import DimensionMismatch, NoReference, OutOfBounds, UnknownLandscape
from sciswarm.landscape import evaluate, make_landscape, reference_error


def test_factory():
    sphere = make_landscape("sphere", 2)
    assert (sphere.dimension, sphere.objective_count, sphere.optimum) == (2, 1, (0.0,))
    assert make_landscape("two_wells", 2).objective_count == 2
    with pytest.raises(UnknownLandscape):
        make_landscape("foo", 2)


@pytest.mark.parametrize("name,x,expected", [
    ("sphere", (0, 0), [0.0]),
    ("sphere", (1, 2), [5.0]),
    ("rastrigin", (0, 0), [0.0]),
    ("two_wells", (-1, 0), [0.0, 4.0]),
    ("two_wells", (1, 0), [4.0, 0.0]),
])
def test_evaluate_values(name, x, expected):
    assert evaluate(make_landscape(name, 2), x).tolist() == expected


def test_rastrigin_off_optimum():
    # 10*1 + (1 - 10 cos(2 pi)) = 1 at an integer point
    assert evaluate(make_landscape("rastrigin", 1), (1.0,))[0] == pytest.approx(1.0, rel=1e-12)


def test_evaluate_checks_input():
    land = make_landscape("sphere", 2)
    with pytest.raises(DimensionMismatch):
        evaluate(land, (0, 0, 0))
    with pytest.raises(OutOfBounds):
        evaluate(land, (6, 0))


def test_reference_error():
    land = make_landscape("sphere", 2)
    assert reference_error(land, [0.0]) == 0.0
    assert reference_error(land, [5.0]) == 5.0
    with pytest.raises(NoReference):
        reference_error(land.without_reference(), [5.0])
    with pytest.raises(NoReference):
        reference_error(make_landscape("two_wells", 2), [0.0, 4.0])


def test_worst_point_bounds_every_objective():
    land = make_landscape("two_wells", 3)
    worst = land.worst_point()
    rng = np.random.default_rng(0)
    for x in rng.uniform(-3, 3, size=(200, 3)):
        assert np.all(evaluate(land, x) <= worst)


@given(st.lists(st.floats(-5.12, 5.12), min_size=3, max_size=3))
def test_evaluate_is_pure(x):
    land = make_landscape("rastrigin", 3)
    assert np.array_equal(evaluate(land, x), evaluate(land, list(x)))
