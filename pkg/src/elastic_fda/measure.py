"""Desk-scale measure theory: interval unions, simple-function integrals,
Riemann sums, and the Cantor set/function in exact arithmetic.

Measurable sets are restricted to finite unions of intervals, the subalgebra
on which every identity asserted here is exact.  Open/closed endpoints are
not distinguished (boundary points are null); the canonical form keeps
intervals sorted, disjoint, and merges touching ones.

Endpoints may be floats or ``fractions.Fraction``; the Cantor constructions
use Fractions throughout so lengths like (2/3)^m are exact rationals.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np

from .errors import InputError, LevelTooDeep
from .fnspace import CellFunction, SampledFunction

__all__ = [
    "IntervalUnion",
    "SimpleFunction",
    "CantorLevel",
    "measure",
    "union",
    "intersection",
    "difference",
    "complement",
    "set_ops",
    "lebesgue_integral_simple",
    "canonical_simple",
    "simple_from_cells",
    "riemann_step_integral",
    "RiemannSumReport",
    "riemann_sum_converge",
    "cantor_level",
    "ternary_digits",
    "in_cantor_set",
    "cantor_function",
    "AcDiagnosticReport",
    "ac_diagnostic",
]

MAX_CANTOR_LEVEL = 35  # 3^35 still exact alongside 64-bit dyadics
MAX_TERNARY_DIGITS = 40
MAX_CANTOR_DIGITS = 52  # keeps the dyadic output exactly representable


@dataclass(frozen=True)
class IntervalUnion:
    """Finite disjoint sorted union of intervals, canonical form."""

    intervals: tuple

    def __init__(self, intervals):
        pairs = []
        for lo, hi in intervals:
            if lo > hi:
                raise InputError(f"interval ({lo}, {hi}) has lo > hi")
            if lo < hi:  # drop empty intervals
                pairs.append((lo, hi))
        pairs.sort()
        merged: list[tuple] = []
        for lo, hi in pairs:
            if merged and lo <= merged[-1][1]:  # overlap or touch
                last_lo, last_hi = merged[-1]
                merged[-1] = (last_lo, max(last_hi, hi))
            else:
                merged.append((lo, hi))
        object.__setattr__(self, "intervals", tuple(merged))

    @staticmethod
    def empty() -> "IntervalUnion":
        return IntervalUnion(())

    @property
    def measure(self):
        return measure(self)

    def contains(self, other: "IntervalUnion") -> bool:
        """Whether every interval of ``other`` lies inside one of ours."""
        starts = [lo for lo, _ in self.intervals]
        for lo, hi in other.intervals:
            k = bisect.bisect_right(starts, lo) - 1
            if k < 0 or hi > self.intervals[k][1]:
                return False
        return True

    def __bool__(self) -> bool:
        return bool(self.intervals)


def measure(u: IntervalUnion):
    """Total length; exact by finite additivity on disjoint intervals."""
    lengths = [hi - lo for lo, hi in u.intervals]
    if lengths and all(isinstance(x, Rational) for x in lengths):
        return sum(lengths, start=Fraction(0))
    return math.fsum(lengths)


def _cell_flags(u: IntervalUnion, points: list) -> list[bool]:
    """Whether each elementary cell (points[k], points[k+1]) lies inside u.

    All endpoints of u are among ``points``, so membership is constant per
    cell and fills as index ranges.
    """
    flags = [False] * (len(points) - 1)
    for lo, hi in u.intervals:
        i = bisect.bisect_left(points, lo)
        j = bisect.bisect_left(points, hi)
        for k in range(i, j):
            flags[k] = True
    return flags


def _sweep(a: IntervalUnion, b: IntervalUnion, keep) -> IntervalUnion:
    points = sorted({p for lo, hi in a.intervals + b.intervals for p in (lo, hi)})
    if not points:
        return IntervalUnion(())
    in_a = _cell_flags(a, points)
    in_b = _cell_flags(b, points)
    out = [
        (lo, hi)
        for lo, hi, fa, fb in zip(points[:-1], points[1:], in_a, in_b)
        if keep(fa, fb)
    ]
    return IntervalUnion(out)


def union(a: IntervalUnion, b: IntervalUnion) -> IntervalUnion:
    return _sweep(a, b, lambda x, y: x or y)


def intersection(a: IntervalUnion, b: IntervalUnion) -> IntervalUnion:
    return _sweep(a, b, lambda x, y: x and y)


def difference(a: IntervalUnion, b: IntervalUnion) -> IntervalUnion:
    return _sweep(a, b, lambda x, y: x and not y)


def complement(a: IntervalUnion, within=(0, 1)) -> IntervalUnion:
    return difference(IntervalUnion([within]), a)


def set_ops(a: IntervalUnion, b: IntervalUnion):
    """(union, intersection, difference a minus b), all canonical."""
    return union(a, b), intersection(a, b), difference(a, b)


@dataclass(frozen=True)
class SimpleFunction:
    """Finite sum of coefficient * indicator(interval union), supports in [0,1]."""

    terms: tuple

    def __init__(self, terms):
        clean = []
        for coef, support in terms:
            if not isinstance(support, IntervalUnion):
                support = IntervalUnion(support)
            for lo, hi in support.intervals:
                if lo < 0 or hi > 1:
                    raise InputError("simple-function supports must lie in [0,1]")
            clean.append((coef, support))
        object.__setattr__(self, "terms", tuple(clean))


def lebesgue_integral_simple(phi: SimpleFunction):
    """Sum of coefficient times measure of support, any representation."""
    contributions = [c * measure(s) for c, s in phi.terms]
    if contributions and all(isinstance(x, Rational) for x in contributions):
        return sum(contributions, start=Fraction(0))
    return math.fsum(contributions)


def canonical_simple(phi: SimpleFunction) -> SimpleFunction:
    """Canonical representation: distinct nonzero values on disjoint sets."""
    points = sorted({p for _, s in phi.terms for lo, hi in s.intervals for p in (lo, hi)})
    by_value: dict = {}
    for lo, hi in zip(points[:-1], points[1:]):
        val = sum(
            c
            for c, s in phi.terms
            if any(slo <= lo and hi <= shi for slo, shi in s.intervals)
        )
        if val != 0:
            by_value.setdefault(val, []).append((lo, hi))
    terms = [(val, IntervalUnion(cells)) for val, cells in sorted(by_value.items())]
    return SimpleFunction(terms)


def simple_from_cells(psi: CellFunction) -> SimpleFunction:
    """The simple function induced by a step function, grouped by value."""
    by_value: dict = {}
    nodes = psi.grid.nodes
    for i, c in enumerate(psi.cell_values):
        if c != 0:
            by_value.setdefault(float(c), []).append((float(nodes[i]), float(nodes[i + 1])))
    return SimpleFunction([(v, IntervalUnion(cells)) for v, cells in sorted(by_value.items())])


def riemann_step_integral(psi: CellFunction) -> float:
    """Riemann integral of a step function: the partition sum itself."""
    return math.fsum(psi.cell_values * psi.grid.deltas)


@dataclass(frozen=True)
class RiemannSumReport:
    """Riemann sums along a mesh sequence with their successive differences."""

    meshes: tuple
    sums: tuple
    differences: tuple  # |S_{k+1} - S_k|


def riemann_sum_converge(f, a, b, cell_counts, tag_rule="midpoint") -> RiemannSumReport:
    """Riemann sums S(P, f) on uniform partitions of [a,b].

    ``tag_rule`` is "midpoint", "left", "right", or a callable (lo, hi) -> tag.
    Tags are passed to ``f`` unchanged, so exact tag objects (e.g. Fractions
    standing for rational tags) survive; that is how the rationals-indicator
    fixture demonstrates non-convergence.
    """
    rules = {
        "midpoint": lambda lo, hi: lo + (hi - lo) / 2,
        "left": lambda lo, hi: lo,
        "right": lambda lo, hi: hi,
    }
    tag = rules.get(tag_rule, tag_rule)
    meshes, sums = [], []
    for n in cell_counts:
        if n < 1:
            raise InputError("cell count must be positive")
        width = (b - a) / n
        # common width factored out so constant integrands sum exactly
        total = math.fsum(float(f(tag(a + i * width, a + (i + 1) * width))) for i in range(n))
        meshes.append(width)
        sums.append(total / n * (b - a))
    diffs = tuple(abs(s2 - s1) for s1, s2 in zip(sums[:-1], sums[1:]))
    return RiemannSumReport(meshes=tuple(meshes), sums=tuple(sums), differences=diffs)


class CantorLevel:
    """Stage m of the middle-thirds construction, with exact rational endpoints.

    Endpoint numerators are kept as integers over 3^m; the IntervalUnion view
    is materialized lazily (2^m Fraction objects get heavy past m ~ 20, while
    the exact measure needs integers only).
    """

    def __init__(self, level: int, lo_num: np.ndarray, hi_num: np.ndarray):
        self.level = int(level)
        self.lo_num = lo_num
        self.hi_num = hi_num
        self.denominator = 3**self.level
        self._intervals: IntervalUnion | None = None

    @property
    def measure(self) -> Fraction:
        return Fraction(int(np.sum(self.hi_num - self.lo_num)), self.denominator)

    @property
    def intervals(self) -> IntervalUnion:
        if self._intervals is None:
            den = self.denominator
            self._intervals = IntervalUnion(
                [(Fraction(int(a), den), Fraction(int(b), den)) for a, b in zip(self.lo_num, self.hi_num)]
            )
        return self._intervals

    def __repr__(self) -> str:
        return f"CantorLevel(level={self.level}, intervals=2^{self.level}, measure={self.measure})"


def cantor_level(m: int) -> CantorLevel:
    """E_m: 2^m closed intervals of length 3^-m, exact over denominator 3^m."""
    if m < 0:
        raise InputError("level must be nonnegative")
    if m > MAX_CANTOR_LEVEL:
        raise LevelTooDeep(f"level {m} exceeds the exact-arithmetic bound {MAX_CANTOR_LEVEL}")
    lo = np.array([0], dtype=np.int64)
    hi = np.array([1], dtype=np.int64)
    for _ in range(m):  # children [3lo, 3lo+1], [3hi-1, 3hi] stay sorted
        nlo = np.empty(2 * lo.size, dtype=np.int64)
        nhi = np.empty(2 * lo.size, dtype=np.int64)
        nlo[0::2] = 3 * lo
        nhi[0::2] = 3 * lo + 1
        nlo[1::2] = 3 * hi - 1
        nhi[1::2] = 3 * hi
        lo, hi = nlo, nhi
    return CantorLevel(level=m, lo_num=lo, hi_num=hi)


def ternary_digits(x, n: int, prefer_no_one: bool = True) -> list[int]:
    """First n ternary digits of x in [0,1], exactly.

    At values with two expansions the one without a trailing 1 is preferred
    (e.g. 1/3 -> 0.0222... rather than 0.1), matching the convention under
    which the Cantor set is exactly the no-1s set.
    """
    x = Fraction(x)
    if x < 0 or x > 1:
        raise InputError("ternary expansion defined on [0,1] only")
    if n < 0 or n > MAX_CANTOR_DIGITS:
        raise InputError(f"digit budget must be in [0, {MAX_CANTOR_DIGITS}]")
    if x == 1:
        return [2] * n
    digits: list[int] = []
    r = x
    for _ in range(n):
        r *= 3
        d = int(r)
        digits.append(d)
        r -= d
        if r == 0:
            break
    if r == 0 and digits and prefer_no_one and digits[-1] == 1:
        digits[-1] = 0
        digits.extend([2] * (n - len(digits)))
    else:
        digits.extend([0] * (n - len(digits)))
    return digits


def in_cantor_set(x, digits: int = MAX_TERNARY_DIGITS) -> bool:
    """Whether no 1 appears in the first ``digits`` preferred ternary digits."""
    if digits > MAX_TERNARY_DIGITS:
        raise InputError(f"membership digit budget must be <= {MAX_TERNARY_DIGITS}")
    return 1 not in ternary_digits(x, digits, prefer_no_one=True)


def cantor_function(x, digits: int = MAX_CANTOR_DIGITS) -> float:
    """The Cantor function via digit transfer, exact to 2^-digits.

    Ternary digits a_n map to binary digits b_n = a_n/2 before the first 1,
    then b_N = 1 and the expansion stops.  The result is a dyadic rational
    with at most ``digits`` bits, hence exactly representable as a float.
    """
    if digits < 0 or digits > MAX_CANTOR_DIGITS:
        raise InputError(f"digit budget must be in [0, {MAX_CANTOR_DIGITS}]")
    if Fraction(x) == 1:
        return 1.0  # the all-2s expansion maps to the all-1s binary tail
    a = ternary_digits(x, digits, prefer_no_one=False)
    y = Fraction(0)
    for n, d in enumerate(a, start=1):
        if d == 1:
            y += Fraction(1, 2**n)
            break
        y += Fraction(d, 2 * 2**n)
    return float(y)


@dataclass(frozen=True)
class AcDiagnosticReport:
    """Empirical absolute-continuity modulus: worst packing sum per delta."""

    deltas: tuple
    worst_sums: tuple
    max_slope: float  # Lipschitz bound: worst_sum <= max_slope * delta


def ac_diagnostic(f: SampledFunction, deltas) -> AcDiagnosticReport:
    """Worst sum of |f(x') - f(x)| over disjoint intervals of total width delta.

    For the piecewise-linear interpolant the supremum is attained by filling
    the steepest cells first, partially covering the last one (gain inside a
    cell is proportional to covered width), so the greedy fractional packing
    is exact.  The value is a falsifier, not a verifier: it can exhibit the
    failure of absolute continuity (the Cantor fixture) but samples alone can
    never certify it.
    """
    widths = f.grid.deltas
    slopes = np.abs(np.diff(f.values)) / widths
    order = np.argsort(-slopes, kind="stable")
    widths, slopes = widths[order], slopes[order]
    worst = []
    for delta in deltas:
        remaining = float(delta)
        total = 0.0
        for w, s in zip(widths, slopes):
            if remaining <= 0.0 or s == 0.0:
                break
            take = min(w, remaining)
            total += s * take
            remaining -= take
        worst.append(total)
    max_slope = float(np.max(slopes)) if slopes.size else 0.0
    return AcDiagnosticReport(deltas=tuple(deltas), worst_sums=tuple(worst), max_slope=max_slope)
