import math

import numpy as np
import pytest

from elastic_fda.errors import InputError, NotInvertible
from elastic_fda.fnspace import CellFunction, Grid, SampledFunction, l2_distance_cells
from elastic_fda.srsf import Srsf
from elastic_fda.warps import (
    Warp,
    action,
    action_algebra_check,
    compose,
    compose_function,
    identity_warp,
    invert,
)

from conftest import make_srsf, make_strict_warp

EPS = np.finfo(float).eps


def flat_warp() -> Warp:
    return Warp(
        SampledFunction(Grid([0.0, 0.4, 0.6, 1.0]), [0.0, 0.5, 0.5, 1.0]),
        monotone_strict=False,
    )


# ---- construction ------------------------------------------------------------

def test_warp_validation():
    with pytest.raises(InputError):
        Warp(SampledFunction(Grid([0.0, 1.0]), [0.1, 1.0]), monotone_strict=False)
    with pytest.raises(InputError):
        Warp(SampledFunction(Grid([0.0, 0.5, 1.0]), [0.0, 0.7, 0.6]), monotone_strict=False)
    with pytest.raises(InputError):
        Warp(SampledFunction(Grid([0.0, 0.5, 1.0]), [0.0, 0.0, 1.0]), monotone_strict=True)


def test_identity_warp():
    g = Grid.uniform(3)
    ident = identity_warp(g)
    assert np.array_equal(ident.values, [0.0, 0.5, 1.0])
    g2 = Grid([0.0, 0.123, 0.456, 1.0])
    assert np.array_equal(identity_warp(g2).values, g2.nodes)


# ---- compose / invert -----------------------------------------------------------

def test_compose_with_identity(rng):
    g = make_strict_warp(rng, 9)
    left = compose(identity_warp(Grid.uniform(5)), g)
    assert np.array_equal(left.values, g.values)
    right = compose(g, identity_warp(g.grid))
    assert np.array_equal(right.values, g.values)


def test_compose_inverse_pair_dense():
    n = 1025
    grid = Grid.uniform(n)
    sq = grid.nodes**2
    sq[-1] = 1.0
    root = np.sqrt(grid.nodes)
    root[-1] = 1.0
    g1 = Warp(SampledFunction(grid, sq), monotone_strict=True)
    g2 = Warp(SampledFunction(grid, root), monotone_strict=True)
    c = compose(g1, g2)
    assert np.max(np.abs(c.values - grid.nodes)) <= 2.0 / n


def test_invert_examples():
    ident = identity_warp(Grid.uniform(4))
    assert np.array_equal(invert(ident).values, ident.values)

    g = Warp(SampledFunction(Grid([0.0, 0.5, 1.0]), [0.0, 0.25, 1.0]), monotone_strict=True)
    gi = invert(g)
    assert np.array_equal(gi.grid.nodes, [0.0, 0.25, 1.0])
    assert np.array_equal(gi.values, [0.0, 0.5, 1.0])
    gg = invert(gi)
    assert np.array_equal(gg.grid.nodes, g.grid.nodes)
    assert np.array_equal(gg.values, g.values)


def test_invert_requires_strict():
    with pytest.raises(NotInvertible):
        invert(flat_warp())


def test_compose_invert_near_identity(rng):
    g = make_strict_warp(rng, 33)
    c = compose(g, invert(g))
    assert np.max(np.abs(c.values - c.grid.nodes)) <= g.grid.mesh


# ---- action -----------------------------------------------------------------------

def test_action_identity_bitwise(rng):
    q = make_srsf(rng, 21)
    out = action(q, identity_warp(q.grid))
    assert np.array_equal(out.q.cell_values, q.q.cell_values)


def test_action_of_unit_srsf_gives_sqrt_slopes(rng):
    # (1, gamma) = sqrt(gamma'); its squared norm telescopes to gamma(1) - gamma(0) = 1
    one = Srsf.from_cells(CellFunction(Grid([0.0, 1.0]), [1.0]))
    for _ in range(20):
        g = make_strict_warp(rng, int(rng.integers(3, 30)))
        out = action(one, g)
        assert np.array_equal(out.grid.nodes, g.grid.nodes)  # no interior breakpoints to pull back
        expect = np.sqrt(np.diff(g.values) / np.diff(g.grid.nodes))
        assert np.allclose(out.q.cell_values, expect, rtol=4 * EPS)
        assert out.norm == pytest.approx(1.0, rel=8 * EPS)


def test_action_negative_unit_dense_quadratic():
    n = 2049
    grid = Grid.uniform(n)
    vals = grid.nodes**2
    vals[-1] = 1.0
    g = Warp(SampledFunction(grid, vals), monotone_strict=True)
    q = Srsf.from_cells(CellFunction(Grid([0.0, 1.0]), [-1.0]))
    out = action(q, g)
    mids = out.grid.midpoints()
    assert np.max(np.abs(out.q.cell_values - (-np.sqrt(2 * mids)))) <= 2.0 / n


def test_action_flat_cells_are_zero():
    q = make_flat_test_srsf()
    out = action(q, flat_warp())
    mids = out.grid.midpoints()
    flat_zone = (mids > 0.4) & (mids < 0.6)
    assert np.all(out.q.cell_values[flat_zone] == 0.0)


def make_flat_test_srsf() -> Srsf:
    return Srsf.from_cells(CellFunction(Grid([0.0, 0.3, 0.7, 1.0]), [1.0, -2.0, 0.5]))


def test_action_norm_preservation(rng):
    for _ in range(30):
        q = make_srsf(rng, int(rng.integers(3, 40)))
        g = make_strict_warp(rng, int(rng.integers(3, 30)))
        out = action(q, g)
        assert abs(out.norm - q.norm) <= 8 * EPS * max(q.norm, 1.0)


def test_action_distance_preservation(rng):
    for _ in range(30):
        q1 = make_srsf(rng, int(rng.integers(3, 30)))
        q2 = make_srsf(rng, int(rng.integers(3, 30)))
        g = make_strict_warp(rng, int(rng.integers(3, 25)))
        before = l2_distance_cells(q1.q, q2.q)
        after = l2_distance_cells(action(q1, g).q, action(q2, g).q)
        assert abs(after - before) <= 8 * EPS * max(before, 1.0)


def test_action_norm_convergence_to_analytic():
    # sampled smooth q and warp: discrete norms approach the continuum norm
    # || q ||^2 = int (1+t)^2 dt = 7/3, midpoint sampling converges at order 2
    target = math.sqrt(7.0 / 3.0)
    errors = []
    for n in (256, 512, 1024):
        grid = Grid.uniform(n)
        mids = grid.midpoints()
        q = Srsf.from_cells(CellFunction(grid, 1.0 + mids))
        vals = (np.exp(2.0 * grid.nodes) - 1.0) / (math.exp(2.0) - 1.0)
        vals[0], vals[-1] = 0.0, 1.0
        g = Warp(SampledFunction(grid, vals), monotone_strict=True)
        errors.append(abs(action(q, g).norm - target))
    assert errors[1] <= 0.55 * errors[0]
    assert errors[2] <= 0.55 * errors[1]


# ---- algebra check -------------------------------------------------------------------

def test_algebra_check_identity(rng):
    q = make_srsf(rng, 15)
    ident = identity_warp(q.grid)
    rep = action_algebra_check(q, ident, ident)
    assert rep.associativity_gap <= 8 * EPS * max(q.norm, 1.0)
    assert rep.inverse_gap <= 8 * EPS * max(q.norm, 1.0)


def test_algebra_check_inverse_converges(rng):
    one = Srsf.from_cells(CellFunction(Grid([0.0, 1.0]), [1.0]))
    for n in (128, 512):
        g = make_strict_warp(rng, n)
        rep = action_algebra_check(one, g, invert(g))
        assert rep.inverse_gap <= 4.0 / n


def test_algebra_check_propagates_not_invertible(rng):
    q = make_srsf(rng, 9)
    with pytest.raises(NotInvertible):
        action_algebra_check(q, flat_warp(), identity_warp(Grid.uniform(3)))


def test_algebra_check_associativity_scales(rng):
    # smooth warp families sampled at n: composition error vanishes with mesh
    from conftest import make_smooth_warp

    q = make_srsf(rng, 17)
    gaps = []
    for n in (256, 1024):
        g1 = make_smooth_warp(rng, n)
        g2 = make_smooth_warp(rng, n)
        gaps.append(action_algebra_check(q, g1, g2).associativity_gap)
    assert gaps[-1] <= 1e-2 * q.norm
    assert gaps[-1] <= gaps[0]


def test_compose_function_exact_for_refined(rng):
    from elastic_fda.fnspace import SampledFunction as SF

    f = SF(Grid([0.0, 0.5, 1.0]), [0.0, 1.0, 0.0])
    g = make_strict_warp(rng, 17)
    comp = compose_function(f, g)
    # exactly piecewise linear: values at any t interpolate consistently
    probes = np.linspace(0, 1, 257)
    direct = np.interp(np.interp(probes, g.grid.nodes, g.values), f.grid.nodes, f.values)
    via = np.interp(probes, comp.grid.nodes, comp.values)
    assert np.max(np.abs(direct - via)) <= 1e-13
