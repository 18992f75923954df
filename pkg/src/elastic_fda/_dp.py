"""Numba kernels for the alignment dynamic program.

Segment costs are exact piecewise integrals, not quadrature: within a lattice
segment the warp is linear, so walking the merged breakpoints of q1 and the
warp-preimages of q2's breakpoints makes the integrand constant on every
sub-cell.  Breakpoint events carry their exact image value, so the
change-of-variable telescoping holds to rounding.
"""

from __future__ import annotations

import numpy as np
from numba import njit

INF = np.inf

# Breakpoints of q1 and preimages of q2's breakpoints that coincide in exact
# arithmetic can drift apart by a few ulp once the preimage is solved in
# floats; left unmerged, each such pair would contribute a sliver of width
# ~1e-16 carrying an O(1) mismatched integrand.  Events closer than this are
# treated as one.
EVENT_SNAP = 32.0 * 2.220446049250313e-16


@njit(cache=True)
def seg_cost(t1, v1, t2, v2, x0, x1, g0, g1):
    """Integral of (q1(t) - q2(g(t)) sqrt(s))^2 over [x0, x1].

    g is linear with g(x0) = g0, g(x1) = g1 and slope s > 0; (t1, v1) and
    (t2, v2) are the node/cell-value arrays of the two step functions.
    """
    s = (g1 - g0) / (x1 - x0)
    rs = np.sqrt(s)
    n1 = t1.shape[0]
    n2 = t2.shape[0]
    i = np.searchsorted(t1, x0, side="right")
    j = np.searchsorted(t2, g0, side="right")
    x = x0
    g = g0
    total = 0.0
    while x < x1:
        nt = t1[i] if i < n1 else INF
        if j < n2 and t2[j] < g1:
            px = x + (t2[j] - g) / s
            if nt != INF and -EVENT_SNAP <= px - nt <= EVENT_SNAP:
                px = nt
        else:
            px = INF
        nx = x1
        if nt < nx:
            nx = nt
        if px < nx:
            nx = px
        hit_t = nt == nx
        hit_p = px == nx
        if hit_p:
            gn = t2[j]
        elif nx == x1:
            gn = g1
        else:
            gn = g + s * (nx - x)
        c1 = v1[i - 1]
        c2 = v2[j - 1]
        d = c1 - c2 * rs
        total += d * d * (nx - x)
        x = nx
        g = gn
        if hit_t:
            i += 1
        if hit_p:
            j += 1
    return total


@njit(cache=True)
def dp_fill(t1, v1, t2, v2, M, slopes_a, slopes_b, lo, hi):
    """Fill the M x M lattice table within the band [lo[i], hi[i]] per column.

    Ties in cost prefer the predecessor closest to the diagonal, then the
    smaller column index; comparisons are exact float comparisons so the
    result is deterministic.
    """
    cost = np.full((M, M), INF)
    pred = np.full((M, M), -1, dtype=np.int32)
    cost[0, 0] = 0.0
    expanded = 1
    denom = M - 1.0
    S = slopes_a.shape[0]
    for i in range(1, M):
        for j in range(lo[i], hi[i] + 1):
            if j < 1:
                continue
            best = INF
            bestk = -1
            bkey1 = 0
            bkey2 = 0
            bkey3 = 0
            for k in range(S):
                pi = i - slopes_a[k]
                pj = j - slopes_b[k]
                if pi < 0 or pj < 0:
                    continue
                if pj < lo[pi] or pj > hi[pi]:
                    continue
                base = cost[pi, pj]
                if base == INF:
                    continue
                c = base + seg_cost(t1, v1, t2, v2, pi / denom, i / denom, pj / denom, j / denom)
                key1 = pi - pj if pi >= pj else pj - pi
                key2 = pi
                key3 = pj
                take = False
                if c < best:
                    take = True
                elif c == best and bestk >= 0:
                    if key1 < bkey1 or (
                        key1 == bkey1 and (key2 < bkey2 or (key2 == bkey2 and key3 < bkey3))
                    ):
                        take = True
                if take:
                    best = c
                    bestk = k
                    bkey1 = key1
                    bkey2 = key2
                    bkey3 = key3
            if bestk >= 0:
                cost[i, j] = best
                pred[i, j] = bestk
                expanded += 1
    return cost, pred, expanded
