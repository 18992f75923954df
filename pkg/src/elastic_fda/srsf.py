"""The square-root slope transform and its inverse.

``q = sign(f') * sqrt(|f'|)`` turns absolutely continuous functions into
square-integrable step functions (cell-wise, since f' lives on cells), and
``f(t) = f(0) + integral of q|q|`` turns them back.  Because ``q|q|``
reproduces ``f'`` cell by cell, the round trip is exact up to rounding.
The squared norm of q equals the length of f, again as an exact cell sum.

Also here: constant-speed reparametrization (factor f into h o gamma with
|h'| constant) and the standard form of an SRSF (a +/-sqrt(L)-valued step
function composed with a warp).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ZeroLength
from .fnspace import (
    CellFunction,
    Grid,
    SampledFunction,
    cumulative_integral,
    derivative,
    l2_norm,
)
from .warps import Warp

__all__ = [
    "Srsf",
    "StandardFormPair",
    "srsf_of",
    "reconstruct",
    "normalize",
    "scale",
    "constant_speed",
    "standard_form",
]


@dataclass(frozen=True, eq=False)
class Srsf:
    """An SRSF as a step function together with its cached L2 norm."""

    q: CellFunction
    norm: float

    @staticmethod
    def from_cells(q: CellFunction) -> "Srsf":
        return Srsf(q, l2_norm(q))

    @property
    def grid(self) -> Grid:
        return self.q.grid


@dataclass(frozen=True, eq=False)
class StandardFormPair:
    """Decomposition q = (w, gamma) with |w| = sqrt(length) everywhere."""

    w: CellFunction
    gamma: Warp
    length: float


def srsf_of(f: SampledFunction) -> Srsf:
    """Square-root slope function of f, one value per cell of f's grid."""
    d = derivative(f).cell_values
    q = CellFunction(f.grid, np.sign(d) * np.sqrt(np.abs(d)))
    return Srsf.from_cells(q)


def reconstruct(q: Srsf, f0: float) -> SampledFunction:
    """Integrate q|q| from 0 and shift by f0; inverse of srsf_of up to rounding."""
    cells = q.q.cell_values
    f = cumulative_integral(CellFunction(q.grid, cells * np.abs(cells)))
    return f.shift(f0)


def normalize(q: Srsf) -> Srsf:
    """Rescale q to unit norm."""
    if q.norm == 0.0:
        raise ZeroLength("cannot normalize a zero-length SRSF")
    return Srsf.from_cells(q.q.map(lambda v: v / q.norm))


def scale(q: Srsf, a: float) -> Srsf:
    """Multiply q by a scalar."""
    return Srsf.from_cells(q.q.map(lambda v: a * v))


def _collapsed_image(gamma_values: np.ndarray, node_values: np.ndarray):
    """Drop nodes where gamma is flat, keeping the first of each run.

    The function being transported is constant across any flat run, so its
    value there is unambiguous.  gamma endpoints are pinned, so the surviving
    nodes still span [0,1].
    """
    keep = np.concatenate(([True], np.diff(gamma_values) > 0.0))
    return gamma_values[keep], node_values[keep]


def _cumulative_warp(weights: np.ndarray, grid: Grid, total: float) -> np.ndarray:
    vals = np.concatenate(([0.0], np.cumsum(weights * grid.deltas))) / total
    vals[0], vals[-1] = 0.0, 1.0
    return np.maximum.accumulate(vals)  # guard rounding-induced dips


def constant_speed(f: SampledFunction) -> tuple[SampledFunction, Warp]:
    """Factor f = h o gamma with |h'| equal to the length of f a.e.

    gamma is the normalized cumulative |f'|; h lives on gamma's image grid
    with flat runs of gamma collapsed.
    """
    d = derivative(f).cell_values
    speeds = np.abs(d)
    length = math.fsum(speeds * f.grid.deltas)
    if length == 0.0:
        raise ZeroLength("constant function has no constant-speed factorization")
    gvals = _cumulative_warp(speeds, f.grid, length)
    gamma = Warp(SampledFunction(f.grid, gvals), monotone_strict=bool(np.all(speeds > 0.0)))
    image, hvals = _collapsed_image(gvals, f.values)
    h = SampledFunction(Grid(image), hvals)
    return h, gamma


def standard_form(q: Srsf) -> StandardFormPair:
    """Split q into a +/-sqrt(L) step function and the warp gamma = (1/L) int q^2.

    Flat runs of gamma (the zero set of q) have empty image after collapse, so
    w carries only the sign pattern of the nonzero cells; applying the warp
    action to (w, gamma) reproduces q on every cell where q != 0.
    """
    if q.norm == 0.0:
        raise ZeroLength("zero SRSF has no standard form")
    cells = q.q.cell_values
    weights = cells * cells
    length = math.fsum(weights * q.grid.deltas)
    gvals = _cumulative_warp(weights, q.grid, length)
    gamma = Warp(SampledFunction(q.grid, gvals), monotone_strict=bool(np.all(weights > 0.0)))
    image, _ = _collapsed_image(gvals, q.grid.nodes)
    signs = np.sign(cells[np.diff(gvals) > 0.0])
    w = CellFunction(Grid(image), signs * math.sqrt(length))
    return StandardFormPair(w=w, gamma=gamma, length=length)
