import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from elastic_fda.errors import InputError
from elastic_fda.fnspace import (
    CellFunction,
    Grid,
    SampledFunction,
    bounded_variation,
    cumulative_integral,
    derivative,
    integrate_cells,
    l2_norm,
    resample,
    sampled_from_points,
    union_grid,
)

EPS = np.finfo(float).eps


# ---- grids and validation -------------------------------------------------

def test_grid_rejects_bad_nodes():
    with pytest.raises(InputError):
        Grid([0.0, 1.0, 0.5])
    with pytest.raises(InputError):
        Grid([0.0, 0.5])
    with pytest.raises(InputError):
        Grid([0.1, 0.5, 1.0])
    with pytest.raises(InputError):
        Grid([0.0])


def test_sampled_function_evaluates_nodes_exactly(rng):
    from conftest import make_function

    f = make_function(rng, 17)
    assert np.array_equal(f(f.grid.nodes), f.values)


# ---- derivative -----------------------------------------------------------

def test_derivative_of_identity_is_one():
    g = Grid([0.0, 0.3, 0.55, 1.0])
    f = SampledFunction(g, g.nodes.copy())
    assert np.allclose(derivative(f).cell_values, 1.0, rtol=4 * EPS, atol=0.0)


def test_derivative_of_constant_is_zero():
    f = SampledFunction(Grid([0.0, 0.2, 1.0]), [3.5, 3.5, 3.5])
    assert np.array_equal(derivative(f).cell_values, [0.0, 0.0])


def test_derivative_of_tent():
    f = SampledFunction(Grid.uniform(5), np.abs(Grid.uniform(5).nodes - 0.5))
    assert np.array_equal(derivative(f).cell_values, [-1.0, -1.0, 1.0, 1.0])


# ---- integration ----------------------------------------------------------

def test_integrate_unit_cells():
    assert integrate_cells(CellFunction(Grid.uniform(7), np.ones(6))) == pytest.approx(1.0, abs=4 * EPS)


def test_integrate_constant_two():
    assert integrate_cells(CellFunction(Grid([0.0, 0.5, 1.0]), [2.0, 2.0])) == pytest.approx(2.0, abs=4 * EPS)


def test_integrate_handsum():
    assert integrate_cells(CellFunction(Grid([0.0, 0.25, 1.0]), [1.0, 3.0])) == 2.5


def test_cumulative_integral_examples():
    ones = cumulative_integral(CellFunction(Grid([0.0, 0.25, 0.7, 1.0]), [1.0, 1.0, 1.0]))
    assert np.allclose(ones.values, ones.grid.nodes, rtol=0, atol=4 * EPS)
    zeros = cumulative_integral(CellFunction(Grid([0.0, 0.5, 1.0]), [0.0, 0.0]))
    assert np.array_equal(zeros.values, [0.0, 0.0, 0.0])
    hand = cumulative_integral(CellFunction(Grid([0.0, 0.5, 1.0]), [2.0, 0.0]))
    assert np.array_equal(hand.values, [0.0, 1.0, 1.0])


# ---- resample ---------------------------------------------------------------

def test_resample_identity_is_exact(rng):
    from conftest import make_function

    f = make_function(rng, 23)
    again = resample(f, f.grid)
    assert np.array_equal(again.values, f.values)


def test_resample_linear_exact():
    f = SampledFunction(Grid([0.0, 1.0]), [0.0, 2.0])
    out = resample(f, Grid([0.0, 0.5, 1.0]))
    assert np.array_equal(out.values, [0.0, 1.0, 2.0])
    g = Grid([0.0, 0.125, 0.625, 1.0])
    ident = SampledFunction(Grid.uniform(9), Grid.uniform(9).nodes.copy())
    assert np.allclose(resample(ident, g).values, g.nodes, rtol=2 * EPS, atol=0)


# ---- l2 norm ----------------------------------------------------------------

def test_l2_norm_examples():
    assert l2_norm(CellFunction(Grid.uniform(5), np.ones(4))) == pytest.approx(1.0, abs=4 * EPS)
    assert l2_norm(CellFunction(Grid([0.0, 0.3, 1.0]), [-2.5, -2.5])) == pytest.approx(2.5, rel=4 * EPS)
    assert l2_norm(CellFunction(Grid([0.0, 0.5, 1.0]), [1.0, -1.0])) == pytest.approx(1.0, abs=4 * EPS)


# ---- bounded variation -------------------------------------------------------

def test_variation_examples(rng):
    mono = SampledFunction(Grid([0.0, 0.4, 1.0]), [1.0, 1.5, 4.0])
    assert bounded_variation(mono) == pytest.approx(3.0, abs=4 * EPS)
    const = SampledFunction(Grid([0.0, 1.0]), [2.0, 2.0])
    assert bounded_variation(const) == 0.0
    tent = SampledFunction(Grid([0.0, 0.5, 1.0]), [0.0, 1.0, 0.0])
    assert bounded_variation(tent) == 2.0


# ---- invariants (property style) ---------------------------------------------

@given(st.integers(min_value=0, max_value=2**31 - 1))
def test_round_trips_random(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, 40))
    nodes = np.concatenate(([0.0], np.sort(rng.uniform(0.01, 0.99, n - 2)), [1.0]))
    if np.min(np.diff(nodes)) <= 1e-4:
        nodes = Grid.uniform(n).nodes
    g = CellFunction(Grid(nodes), rng.uniform(-3, 3, n - 1))

    F = cumulative_integral(g)
    back = derivative(F).cell_values
    scale = np.maximum(1.0, np.maximum(np.abs(F.values[:-1]), np.abs(F.values[1:])))
    assert np.all(np.abs(back - g.cell_values) <= 4 * EPS * scale / F.grid.deltas)

    f = SampledFunction(Grid(nodes), rng.uniform(-3, 3, n))
    rebuilt = cumulative_integral(derivative(f)).values + f.values[0]
    assert np.max(np.abs(rebuilt - f.values)) <= n * 4 * EPS * 8.0


@given(st.integers(min_value=0, max_value=2**31 - 1))
def test_norm_consistency_random(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, 30))
    g = CellFunction(Grid.uniform(n), rng.uniform(-3, 3, n - 1))
    sq = integrate_cells(g.map(lambda v: v * v))
    assert abs(l2_norm(g) ** 2 - sq) <= 4 * EPS * max(sq, 1.0)


def test_split_additivity(rng):
    from conftest import make_cells

    for _ in range(50):
        g = make_cells(rng, int(rng.integers(3, 30)))
        base = integrate_cells(g)
        k = int(rng.integers(0, g.cell_values.size))
        nodes = g.grid.nodes
        mid = 0.5 * (nodes[k] + nodes[k + 1])
        split = CellFunction(Grid(np.insert(nodes, k + 1, mid)), np.insert(g.cell_values, k, g.cell_values[k]))
        assert abs(integrate_cells(split) - base) <= 2 * EPS * max(1.0, abs(base)) * 2


def test_variation_subadditive(rng):
    from conftest import make_grid

    for _ in range(50):
        grid = make_grid(rng, int(rng.integers(3, 30)))
        a = rng.uniform(-2, 2, grid.size)
        b = rng.uniform(-2, 2, grid.size)
        f, g = SampledFunction(grid, a), SampledFunction(grid, b)
        s = SampledFunction(grid, a + b)
        assert bounded_variation(s) <= bounded_variation(f) + bounded_variation(g) + 64 * EPS


# ---- ingestion ----------------------------------------------------------------

def test_ingestion_collapses_duplicates_keeping_last():
    f = sampled_from_points([0.0, 0.5, 0.5, 1.0], [1.0, 2.0, 7.0, 3.0])
    assert np.array_equal(f.grid.nodes, [0.0, 0.5, 1.0])
    assert np.array_equal(f.values, [1.0, 7.0, 3.0])


def test_ingestion_rejects_decreasing():
    with pytest.raises(InputError, match="decrease"):
        sampled_from_points([0.0, 0.6, 0.4, 1.0], [0.0, 1.0, 2.0, 3.0])


def test_ingestion_rescale():
    f = sampled_from_points([2.0, 3.0, 4.0], [5.0, 6.0, 7.0], rescale_domain=True)
    assert np.array_equal(f.grid.nodes, [0.0, 0.5, 1.0])


def test_union_grid_merges_exactly():
    u = union_grid(Grid([0.0, 0.25, 1.0]), Grid([0.0, 0.25, 0.75, 1.0]))
    assert np.array_equal(u.nodes, [0.0, 0.25, 0.75, 1.0])
