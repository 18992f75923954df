import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from elastic_fda.fnspace import CellFunction, Grid, SampledFunction
from elastic_fda.srsf import Srsf
from elastic_fda.warps import Warp

settings.register_profile(
    "ci",
    derandomize=True,
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


def make_grid(rng, n: int, min_rel_gap: float = 0.05) -> Grid:
    """Random strictly increasing grid; cell widths within a bounded ratio."""
    gaps = rng.uniform(min_rel_gap, 1.0, n - 1)
    nodes = np.concatenate(([0.0], np.cumsum(gaps)))
    nodes /= nodes[-1]
    nodes[0], nodes[-1] = 0.0, 1.0
    return Grid(nodes)


def make_function(rng, n: int, spread: float = 2.0) -> SampledFunction:
    return SampledFunction(make_grid(rng, n), rng.uniform(-spread, spread, n))


def make_cells(rng, n: int, spread: float = 2.0) -> CellFunction:
    return CellFunction(make_grid(rng, n), rng.uniform(-spread, spread, n - 1))


def make_srsf(rng, n: int) -> Srsf:
    return Srsf.from_cells(make_cells(rng, n))


def make_strict_warp(rng, n: int) -> Warp:
    steps = rng.uniform(0.2, 1.8, n - 1)
    vals = np.concatenate(([0.0], np.cumsum(steps)))
    vals /= vals[-1]
    vals[0], vals[-1] = 0.0, 1.0
    return Warp(SampledFunction(make_grid(rng, n), vals), monotone_strict=True)


def make_smooth_warp(rng, n: int) -> Warp:
    """Sampled smooth warp; roughness vanishes under refinement."""
    grid = Grid.uniform(n)
    t = grid.nodes
    vals = t.copy()
    for k in (1, 2, 3):
        c = rng.uniform(-0.25, 0.25) / (np.pi * k * 2)
        vals = vals + c * np.sin(np.pi * k * t)
    vals[0], vals[-1] = 0.0, 1.0
    return Warp(SampledFunction(grid, vals), monotone_strict=True)


def make_increasing_function(rng, n: int) -> SampledFunction:
    steps = rng.uniform(0.1, 2.0, n - 1)
    vals = np.concatenate(([0.0], np.cumsum(steps)))
    return SampledFunction(make_grid(rng, n), vals + rng.uniform(-1.0, 1.0))


def make_lattice_path(rng, M: int, slopes) -> tuple:
    """Random admissible path from (0,0) to (M-1,M-1) over the given slopes."""
    ratio = max(max(a, b) for a, b in slopes)
    path = [(0, 0)]
    while path[-1] != (M - 1, M - 1):
        i, j = path[-1]
        cands = []
        for a, b in slopes:
            ri, rj = M - 1 - (i + a), M - 1 - (j + b)
            if ri < 0 or rj < 0:
                continue
            if (ri == 0) != (rj == 0):
                continue
            if ri > 0 and (rj > ratio * ri or ri > ratio * rj):
                continue
            cands.append((a, b))
        a, b = cands[int(rng.integers(len(cands)))] if cands else (1, 1)
        path.append((i + a, j + b))
    return tuple(path)
