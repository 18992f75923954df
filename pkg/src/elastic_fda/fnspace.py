"""Grids, sampled functions, and exact piecewise calculus on [0,1].

Functions are represented by their values on a strictly increasing grid and
evaluated by linear interpolation, so every represented function is absolutely
continuous by construction.  Derivatives and square-root slope functions live
on cells (one value per grid interval), never on nodes: the derivative of a
piecewise-linear function is undefined at kinks and only matters almost
everywhere.  With cell-based storage, differentiation and cumulative
integration are exact inverses up to float rounding, which is what makes the
round-trip identities in the test suite hold at ulp level.

Sums that back ulp-level tolerances use ``math.fsum`` (exact summation).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError

__all__ = [
    "Grid",
    "SampledFunction",
    "CellFunction",
    "derivative",
    "integrate_cells",
    "cumulative_integral",
    "resample",
    "l2_norm",
    "bounded_variation",
    "union_grid",
    "refine_cells",
    "l2_distance_cells",
    "l2_inner_cells",
    "sampled_from_points",
]


def _as_readonly(values) -> np.ndarray:
    arr = np.array(values, dtype=np.float64)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class Grid:
    """A strictly increasing partition of [0,1] with pinned endpoints."""

    nodes: np.ndarray

    def __init__(self, nodes):
        object.__setattr__(self, "nodes", _as_readonly(nodes))
        n = self.nodes
        if n.ndim != 1 or n.size < 2:
            raise InputError("grid needs at least two nodes")
        if not np.all(np.isfinite(n)):
            raise InputError("grid nodes must be finite")
        if n[0] != 0.0 or n[-1] != 1.0:
            raise InputError("grid must start at 0 and end at 1 exactly")
        if not np.all(np.diff(n) > 0.0):
            raise InputError("grid nodes must be strictly increasing")

    @staticmethod
    def uniform(n: int) -> "Grid":
        if n < 2:
            raise InputError("uniform grid needs n >= 2")
        nodes = np.arange(n, dtype=np.float64) / (n - 1)
        nodes[-1] = 1.0
        return Grid(nodes)

    @property
    def size(self) -> int:
        return int(self.nodes.size)

    @property
    def deltas(self) -> np.ndarray:
        return np.diff(self.nodes)

    @property
    def mesh(self) -> float:
        """Largest cell width."""
        return float(np.max(self.deltas))

    def midpoints(self) -> np.ndarray:
        return 0.5 * (self.nodes[:-1] + self.nodes[1:])

    def __eq__(self, other) -> bool:
        return isinstance(other, Grid) and np.array_equal(self.nodes, other.nodes)


@dataclass(frozen=True, eq=False)
class SampledFunction:
    """A function on [0,1]: values on a grid, piecewise-linear in between."""

    grid: Grid
    values: np.ndarray

    def __init__(self, grid: Grid, values):
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", _as_readonly(values))
        v = self.values
        if v.shape != grid.nodes.shape:
            raise InputError("values must match the grid length")
        if not np.all(np.isfinite(v)):
            raise InputError("function values must be finite")

    def __call__(self, t) -> np.ndarray | float:
        out = np.interp(t, self.grid.nodes, self.values)
        return float(out) if np.isscalar(t) else out

    def shift(self, c: float) -> "SampledFunction":
        return SampledFunction(self.grid, self.values + c)

    def scale(self, a: float) -> "SampledFunction":
        return SampledFunction(self.grid, a * self.values)


@dataclass(frozen=True, eq=False)
class CellFunction:
    """A step function: one value per grid cell [t_i, t_{i+1})."""

    grid: Grid
    cell_values: np.ndarray

    def __init__(self, grid: Grid, cell_values):
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "cell_values", _as_readonly(cell_values))
        v = self.cell_values
        if v.ndim != 1 or v.size != grid.size - 1:
            raise InputError("cell_values must have one entry per grid cell")
        if not np.all(np.isfinite(v)):
            raise InputError("cell values must be finite")

    def value_at(self, t) -> np.ndarray | float:
        """Value of the cell containing t (last cell is closed at 1)."""
        idx = np.clip(
            np.searchsorted(self.grid.nodes, t, side="right") - 1,
            0,
            self.cell_values.size - 1,
        )
        out = self.cell_values[idx]
        return float(out) if np.isscalar(t) else out

    def map(self, fn) -> "CellFunction":
        return CellFunction(self.grid, fn(self.cell_values))


def derivative(f: SampledFunction) -> CellFunction:
    """Cell-wise difference quotients: exactly f' of the interpolant a.e."""
    d = np.diff(f.values) / f.grid.deltas
    return CellFunction(f.grid, d)


def integrate_cells(g: CellFunction) -> float:
    """Exact integral of a step function, sum of value * cell width."""
    return math.fsum(g.cell_values * g.grid.deltas)


def cumulative_integral(g: CellFunction) -> SampledFunction:
    """Indefinite integral with F(0) = 0; absolutely continuous by construction."""
    acc = np.concatenate(([0.0], np.cumsum(g.cell_values * g.grid.deltas)))
    return SampledFunction(g.grid, acc)


def resample(f: SampledFunction, new_grid: Grid) -> SampledFunction:
    """Linear interpolant of f at the new grid nodes."""
    return SampledFunction(new_grid, np.interp(new_grid.nodes, f.grid.nodes, f.values))


def l2_norm(g: CellFunction) -> float:
    """L2 norm of a step function, exact cell sum."""
    v = g.cell_values
    return math.sqrt(math.fsum(v * v * g.grid.deltas))


def bounded_variation(f: SampledFunction) -> float:
    """Total variation; for piecewise-linear f the node sum is the supremum."""
    return math.fsum(np.abs(np.diff(f.values)))


def union_grid(*grids: Grid) -> Grid:
    """Union of the node sets (exact float dedup)."""
    nodes = np.unique(np.concatenate([g.nodes for g in grids]))
    return Grid(nodes)


def refine_cells(g: CellFunction, fine: Grid) -> CellFunction:
    """Restrict a step function to a refinement of its grid.

    Every node of ``g.grid`` must appear in ``fine``; each fine cell then lies
    inside exactly one coarse cell, found by its midpoint, and the restriction
    is exact.
    """
    return CellFunction(fine, g.value_at(fine.midpoints()))


def _common_cells(a: CellFunction, b: CellFunction):
    fine = union_grid(a.grid, b.grid)
    return refine_cells(a, fine), refine_cells(b, fine), fine


def l2_distance_cells(a: CellFunction, b: CellFunction) -> float:
    """L2 distance between two step functions, exact on the merged grid."""
    ra, rb, fine = _common_cells(a, b)
    d = ra.cell_values - rb.cell_values
    return math.sqrt(math.fsum(d * d * fine.deltas))


def l2_inner_cells(a: CellFunction, b: CellFunction) -> float:
    """L2 inner product of two step functions, exact on the merged grid."""
    ra, rb, fine = _common_cells(a, b)
    return math.fsum(ra.cell_values * rb.cell_values * fine.deltas)


def sampled_from_points(ts, vs, rescale_domain: bool = False) -> SampledFunction:
    """Build a SampledFunction from raw (t, value) points.

    Decreasing abscissae are rejected (reordering would hide corruption);
    exact duplicate abscissae are collapsed keeping the last value.  With
    ``rescale_domain`` the abscissae are mapped affinely onto [0,1].
    """
    t = np.asarray(ts, dtype=np.float64)
    v = np.asarray(vs, dtype=np.float64)
    if t.ndim != 1 or t.shape != v.shape or t.size < 2:
        raise InputError("need matching t/value sequences with at least two points")
    if not (np.all(np.isfinite(t)) and np.all(np.isfinite(v))):
        raise InputError("points must be finite")
    if np.any(np.diff(t) < 0.0):
        k = int(np.argmax(np.diff(t) < 0.0))
        raise InputError(f"abscissae decrease at position {k + 1} (t={t[k + 1]!r})")
    if rescale_domain:
        span = t[-1] - t[0]
        if span <= 0.0:
            raise InputError("cannot rescale a domain of zero width")
        t = (t - t[0]) / span
        t[0], t[-1] = 0.0, 1.0
    keep = np.concatenate((np.diff(t) > 0.0, [True]))  # last value wins on duplicates
    t, v = t[keep], v[keep]
    if t.size < 2:
        raise InputError("fewer than two distinct abscissae")
    return SampledFunction(Grid(t), v)
