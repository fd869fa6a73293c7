"""Lattice points of the plane region

    R(B) = { (x, y) : x, y >= 1,  x^(g1+c1) y^c2 <= B^2,  x^c1 y^(g2+c2) <= B^2 }

whose count bounds the number of points off the distinguished curves.
Membership is decided with integers only: the four rational exponents are
put over a common denominator L and both inequalities are raised to the
L-th power.  The integral estimates in :func:`area_closed_form` are floating
point and are only ever used as a cross-check.
"""

from __future__ import annotations

import math
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    InsufficientSamples,
    NonPositiveDenominator,
    NonPositiveFiberDegree,
    UnboundedRegion,
)

# below this many x-columns a worker pool costs more than it saves
_PARALLEL_MIN_WIDTH = 4096


def iroot(n: int, k: int) -> int:
    """Largest integer r >= 0 with r**k <= n."""
    if n < 0 or k < 1:
        raise ValueError("iroot needs n >= 0 and k >= 1")
    if n < 2 or k == 1:
        return n
    r = 1 << -(-n.bit_length() // k)  # r**k > n
    while True:
        s = ((k - 1) * r + n // r ** (k - 1)) // k
        if s >= r:
            break
        r = s
    while r ** k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


def floor_power(B: int, r: Fraction) -> int:
    """floor(B ** r) for an integer B >= 1 and rational r >= 0."""
    r = Fraction(r)
    if r < 0:
        raise ValueError("negative exponent")
    return iroot(B ** r.numerator, r.denominator)


@dataclass(frozen=True)
class RegionParams:
    g1: Fraction
    g2: Fraction
    c1: Fraction
    c2: Fraction
    B: int

    def __post_init__(self):
        for name in ("g1", "g2", "c1", "c2"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if int(self.B) != self.B or self.B < 1:
            raise ValueError(f"B must be a positive integer, got {self.B}")
        object.__setattr__(self, "B", int(self.B))
        for k, s in ((1, self.g1 + self.c1), (2, self.g2 + self.c2)):
            if s <= 0:
                raise NonPositiveFiberDegree(f"gamma{k} + c{k} = {s} <= 0")

    @property
    def denominator(self) -> Fraction:
        return self.g1 * self.g2 + self.g2 * self.c1 + self.g1 * self.c2

    def with_B(self, B: int) -> "RegionParams":
        return RegionParams(self.g1, self.g2, self.c1, self.c2, B)

    def swapped(self) -> "RegionParams":
        return RegionParams(self.g2, self.g1, self.c2, self.c1, self.B)

    def integer_form(self) -> tuple:
        """(x1, y1, x2, y2, K): both inequalities as x^xk y^yk <= B^K in integers."""
        ex = (self.g1 + self.c1, self.c2, self.c1, self.g2 + self.c2)
        L = math.lcm(*(e.denominator for e in ex))
        return tuple(int(e * L) for e in ex) + (2 * L,)


class _Predicate:
    """Exact test of the two region inequalities for one parameter set."""

    def __init__(self, p: RegionParams):
        self.x1, self.y1, self.x2, self.y2, K = p.integer_form()
        self.bk = p.B ** K

    @staticmethod
    def _le(x, y, px, py, bk) -> bool:
        lhs = rhs = 1
        if px >= 0:
            lhs *= x ** px
        else:
            rhs *= x ** -px
        if py >= 0:
            lhs *= y ** py
        else:
            rhs *= y ** -py
        return lhs <= bk * rhs

    def first(self, x, y) -> bool:
        return self._le(x, y, self.x1, self.y1, self.bk)

    def second(self, x, y) -> bool:
        return self._le(x, y, self.x2, self.y2, self.bk)

    def __call__(self, x, y) -> bool:
        return self.first(x, y) and self.second(x, y)


def in_region(x: int, y: int, p: RegionParams) -> bool:
    if x < 1 or y < 1:
        raise ValueError("region points have x, y >= 1")
    return _Predicate(p)(x, y)


def region_bounds(p: RegionParams) -> tuple:
    """Exponents (rx, ry) with x <= B^rx and y <= B^ry on the whole region.

    With c2 >= 0 the first inequality alone gives x^(g1+c1) <= B^2.  With
    c2 < 0, raising the first to the power g2+c2 and the second to -c2 and
    multiplying eliminates y: x^(g1 g2 + g2 c1 + g1 c2) <= B^(2 g2).  The y
    bound is symmetric.
    """
    den = p.denominator
    out = []
    for g_own, c_own, g_other, c_other in ((p.g1, p.c1, p.g2, p.c2), (p.g2, p.c2, p.g1, p.c1)):
        cands = []
        if c_other >= 0:
            cands.append(2 / (g_own + c_own))
        if den > 0:
            cands.append(2 * g_other / den)
        elif c_other < 0:
            raise UnboundedRegion(
                f"c = {c_other} < 0 with g1 g2 + g2 c1 + g1 c2 = {den} <= 0 leaves no finite bound")
        out.append(max(cands))
    return tuple(out)


def _column_count(pred: _Predicate, x: int, ymax: int) -> int:
    """Number of y in [1, ymax] with (x, y) in the region.

    For fixed x each inequality is monotone in y, so the admissible set is an
    interval: upper-type constraints (positive y exponent) cut it from above,
    a negative y exponent cuts it from below.
    """
    uppers = [f for f, py in ((pred.first, pred.y1), (pred.second, pred.y2)) if py > 0]
    lowers = [f for f, py in ((pred.first, pred.y1), (pred.second, pred.y2)) if py < 0]
    flats = [f for f, py in ((pred.first, pred.y1), (pred.second, pred.y2)) if py == 0]
    if not all(f(x, 1) for f in flats):
        return 0

    def up_ok(y):
        return all(f(x, y) for f in uppers)

    def low_ok(y):
        return all(f(x, y) for f in lowers)

    if not up_ok(1):
        return 0
    lo, hi = 1, ymax  # up_ok(lo) holds; find the last y with up_ok
    if not up_ok(hi):
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if up_ok(mid):
                lo = mid
            else:
                hi = mid
        hi = lo
    if not low_ok(hi):
        return 0
    lo, top = 1, hi
    if not low_ok(lo):
        bad = lo  # first y with low_ok lies in (bad, top]
        while top - bad > 1:
            mid = (bad + top) // 2
            if low_ok(mid):
                top = mid
            else:
                bad = mid
        lo = top
    return hi - lo + 1


def _count_strip(p: RegionParams, x_start: int, x_stop: int, ymax: int) -> int:
    pred = _Predicate(p)
    return sum(_column_count(pred, x, ymax) for x in range(x_start, x_stop))


def count_region(p: RegionParams, workers: int = 1) -> int:
    """Exact number of integer points of R(B).

    With ``workers > 1`` and a wide enough x-range, disjoint x-strips are
    counted in separate processes; the total does not depend on the split.
    """
    rx, ry = region_bounds(p)
    xmax = floor_power(p.B, rx)
    ymax = floor_power(p.B, ry)
    if xmax < 1 or ymax < 1:
        return 0
    if workers <= 1 or xmax < _PARALLEL_MIN_WIDTH:
        return _count_strip(p, 1, xmax + 1, ymax)
    edges = [1 + (xmax * k) // workers for k in range(workers)] + [xmax + 1]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_count_strip, p, a, b, ymax) for a, b in zip(edges, edges[1:]) if a < b]
        return sum(f.result() for f in futures)


@dataclass(frozen=True)
class CountSample:
    B: int
    count: int


def count_sweep(p: RegionParams, B_list: Sequence[int], workers: int = 1) -> list:
    if any(b >= c for b, c in zip(B_list, B_list[1:])):
        raise ValueError("B list must be strictly increasing")
    return [CountSample(B, count_region(p.with_B(B), workers)) for B in B_list]


def closed_form_branch(p: RegionParams) -> str:
    """Which integral evaluation :func:`area_closed_form` uses."""
    g1, g2, c1, c2 = p.g1, p.g2, p.c1, p.c2
    if c2 > 0:
        tags = []
        if g2 + c2 == c1:
            tags.append("g2+c2=c1")
        if g1 + c1 == c2:
            tags.append("g1+c1=c2")
        return "I" + "".join(":" + t for t in tags)
    if c2 == 0:
        return "II:g2=c1" if g2 == c1 else "II"
    return "III:g2+c2=c1" if g2 + c2 == c1 else "III"


def area_closed_form(p: RegionParams) -> float:
    """Integral estimate of the lattice count plus the two boundary-line terms.

    Case I (c2 > 0) splits the x-range at the crossing point of the two
    boundary curves; case II (c2 = 0) has a single curve; case III (c2 < 0)
    uses the upper-bound integral that ignores the lower boundary.  Whenever
    an antiderivative exponent vanishes the x^-1 integral gives a log term.
    """
    den = p.denominator
    if den <= 0:
        raise NonPositiveDenominator(f"g1*g2 + g2*c1 + g1*c2 = {den} <= 0")
    g1, g2, c1, c2 = p.g1, p.g2, p.c1, p.c2
    lnB = math.log(p.B)
    delta = 2 / den

    def P(e: Fraction) -> float:
        return math.exp(float(e) * lnB)

    def lower_piece() -> float:
        # integral from 1 to B^(delta g2) of (B^2 x^-c1)^(1/(g2+c2))
        if g2 + c2 == c1:
            return P(2 / (g2 + c2)) * float(delta * g2) * lnB
        k = (g2 + c2) / (g2 + c2 - c1)
        return float(k) * (P(delta * (g1 + g2)) - P(2 / (g2 + c2)))

    if c2 > 0:
        if g1 + c1 == c2:
            upper = P(2 / c2) * float(2 / (g1 + c1) - delta * g2) * lnB
        else:
            upper = float(c2 / (c2 - g1 - c1)) * (P(2 / (g1 + c1)) - P(delta * (g1 + g2)))
        return lower_piece() + upper + P(2 / (g1 + c1)) + P(2 / (g2 + c2))
    if c2 == 0:
        if g2 == c1:
            main = P(2 / g2) * float(2 / (g1 + c1)) * lnB
        else:
            main = float(g2 / (g2 - c1)) * (P(delta * (g1 + g2)) - P(2 / g2))
        return main + P(2 / (g1 + c1)) + P(2 / g2)
    return lower_piece() + P(delta * g2) + P(2 / (g2 + c2))


@dataclass(frozen=True)
class GrowthFit:
    slope: float
    intercept: float
    r_squared: float
    tail_fraction: float
    n_tail: int


def fit_exponent(samples: Sequence[CountSample], tail_fraction: float = 1.0) -> GrowthFit:
    """Least-squares line through (ln B, ln count) over the largest-B tail."""
    if not 0 < tail_fraction <= 1:
        raise ValueError("tail_fraction must lie in (0, 1]")
    ordered = sorted(samples, key=lambda s: s.B)
    n_tail = math.ceil(tail_fraction * len(ordered))
    tail = [s for s in ordered[len(ordered) - n_tail:] if s.count >= 1]
    if len(tail) < 3:
        raise InsufficientSamples(f"need >= 3 samples with count >= 1 in the tail, got {len(tail)}")
    xs = [math.log(s.B) for s in tail]
    ys = [math.log(s.count) for s in tail]
    try:
        slope, intercept = statistics.linear_regression(xs, ys)
    except statistics.StatisticsError as exc:
        raise InsufficientSamples(str(exc)) from None
    ybar = statistics.fmean(ys)
    ss_tot = sum((y - ybar) ** 2 for y in ys)
    ss_res = sum((y - (slope * x + intercept)) ** 2 for x, y in zip(xs, ys))
    r2 = 1.0 if ss_tot == 0 else max(0.0, 1.0 - ss_res / ss_tot)
    return GrowthFit(slope, intercept, r2, tail_fraction, len(tail))
