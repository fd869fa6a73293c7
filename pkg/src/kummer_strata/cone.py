"""Writing a divisor as  sum a_{S,T} A_{S,T} + c1 F1 + c2 F2  with a >= 0.

Only the E-coordinates constrain the a's: for every cell (m, n)

    sum over S containing m, T containing n of a_{S,T}  =  -e_mn,

and c1, c2 then absorb whatever is left of the F1, F2 coordinates.  The
system has 225 unknowns and 16 equations, so there are many decompositions;
three strategies are offered.  The OPTIMIZE strategy works on the exact image
of the feasible set under a -> (gamma1, gamma2), a convex polygon computed
with the exact simplex in :mod:`kummer_strata.simplex`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .errors import NotInCone
from .lattice import (
    F1,
    F2,
    FULL_PAIR,
    N4,
    DivisorClass,
    SubsetPair,
    a_class,
    all_subset_pairs,
    singleton_pair,
)
from .simplex import ExactLP

ALL_PAIRS = tuple(all_subset_pairs())
_PAIR_INDEX = {p: k for k, p in enumerate(ALL_PAIRS)}
CELLS = tuple(product(N4, N4))


class Strategy(enum.Enum):
    CANONICAL = "canonical"
    SINGLETON = "singleton"
    OPTIMIZE = "optimize"

    @classmethod
    def parse(cls, text: str) -> "Strategy":
        key = text.strip().lower().replace("-", "").replace("_", "")
        aliases = {
            "canonical": cls.CANONICAL,
            "singleton": cls.SINGLETON,
            "optimize": cls.OPTIMIZE,
            "optimizedenominator": cls.OPTIMIZE,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown strategy {text!r}") from None


@dataclass(frozen=True)
class AmpleDivisorInput:
    d1: Fraction
    d2: Fraction
    e: tuple  # 4x4, e[i-1][j-1] is the coefficient of E_ij

    def __post_init__(self):
        if len(self.e) != 4 or any(len(row) != 4 for row in self.e):
            raise ValueError("e must be a 4x4 array")
        object.__setattr__(self, "d1", Fraction(self.d1))
        object.__setattr__(self, "d2", Fraction(self.d2))
        object.__setattr__(self, "e", tuple(tuple(Fraction(v) for v in row) for row in self.e))

    @classmethod
    def uniform(cls, d1, d2, e_value) -> "AmpleDivisorInput":
        return cls(d1, d2, tuple((e_value,) * 4 for _ in range(4)))

    @classmethod
    def from_divisor(cls, d: DivisorClass) -> "AmpleDivisorInput":
        return cls(d.f1, d.f2, d.e)

    def to_divisor(self) -> DivisorClass:
        return DivisorClass.from_parts(self.d1, self.d2, self.e)

    def residuals(self) -> dict:
        """-e_mn per cell, keyed by 1-based (m, n)."""
        return {(m, n): -self.e[m - 1][n - 1] for m, n in CELLS}

    @property
    def warnings(self) -> list:
        zero = [f"E{m}{n}" for m, n in CELLS if self.e[m - 1][n - 1] == 0]
        if not zero:
            return []
        return [f"zero E-coefficient on {', '.join(zero)}: the divisor cannot be ample"]

    def check_in_cone(self) -> None:
        bad = [f"e{m}{n}={self.e[m - 1][n - 1]}" for m, n in CELLS if self.e[m - 1][n - 1] > 0]
        if bad:
            raise NotInCone("positive E-coefficient(s) " + ", ".join(bad)
                            + "; every cell sum of non-negative a's is -e <= 0")


@dataclass(frozen=True)
class ConeDecomposition:
    a: dict = field(default_factory=dict)  # SubsetPair -> Fraction, zeros dropped
    c1: Fraction = Fraction(0)
    c2: Fraction = Fraction(0)

    def __post_init__(self):
        clean = {p: Fraction(v) for p, v in sorted(self.a.items()) if v != 0}
        object.__setattr__(self, "a", clean)
        object.__setattr__(self, "c1", Fraction(self.c1))
        object.__setattr__(self, "c2", Fraction(self.c2))

    def coefficient(self, p: SubsetPair) -> Fraction:
        return self.a.get(p, Fraction(0))


def gammas(d: ConeDecomposition) -> tuple:
    g1 = sum((p.card_s * v for p, v in d.a.items()), Fraction(0))
    g2 = sum((p.card_t * v for p, v in d.a.items()), Fraction(0))
    return g1, g2


def reconstruct(d: ConeDecomposition) -> DivisorClass:
    total = d.c1 * F1 + d.c2 * F2
    for p, v in d.a.items():
        total = total + v * a_class(p)
    return total


def cell_sum(d: ConeDecomposition, m: int, n: int) -> Fraction:
    return sum((v for p, v in d.a.items() if p.covers(m, n)), Fraction(0))


def denominator_delta(d1, d2, g1, g2) -> Fraction:
    """d1 g2 + d2 g1 - g1 g2, which equals g1 g2 + g2 c1 + g1 c2 when c = d - g."""
    return Fraction(d1) * g2 + Fraction(d2) * g1 - Fraction(g1) * g2


def _finish(inp: AmpleDivisorInput, a: dict) -> ConeDecomposition:
    d = ConeDecomposition(a)
    g1, g2 = gammas(d)
    return ConeDecomposition(d.a, inp.d1 - g1, inp.d2 - g2)


def _canonical(inp: AmpleDivisorInput) -> ConeDecomposition:
    r = inp.residuals()
    peel = min(r.values())
    a = {FULL_PAIR: peel}
    for (m, n), v in r.items():
        a[singleton_pair(m, n)] = a.get(singleton_pair(m, n), Fraction(0)) + v - peel
    return _finish(inp, a)


def _singleton(inp: AmpleDivisorInput) -> ConeDecomposition:
    return _finish(inp, {singleton_pair(m, n): v for (m, n), v in inp.residuals().items()})


def decompose(inp: AmpleDivisorInput, strategy: Strategy = Strategy.CANONICAL) -> ConeDecomposition:
    inp.check_in_cone()
    if strategy is Strategy.CANONICAL:
        return _canonical(inp)
    if strategy is Strategy.SINGLETON:
        return _singleton(inp)
    if strategy is Strategy.OPTIMIZE:
        return optimize_denominator(inp)
    raise ValueError(f"unknown strategy {strategy!r}")


# -- feasible (gamma1, gamma2) polygon -------------------------------------


@dataclass(frozen=True)
class GammaPolygon:
    """Counter-clockwise vertices, each with a feasible decomposition achieving it."""

    vertices: tuple
    certificates: tuple = field(compare=False, repr=False)


def _cell_lp(inp: AmpleDivisorInput) -> ExactLP:
    A = [[1 if p.covers(m, n) else 0 for p in ALL_PAIRS] for m, n in CELLS]
    b = [-inp.e[m - 1][n - 1] for m, n in CELLS]
    basis = [_PAIR_INDEX[singleton_pair(m, n)] for m, n in CELLS]
    return ExactLP(A, b, basis)


def _cross(o, p, q):
    return (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0])


def _hull(points) -> list:
    """Strict convex hull (no collinear points), counter-clockwise."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    return hull


def gamma_polygon(inp: AmpleDivisorInput) -> GammaPolygon:
    """Exact image of {a >= 0 : cell sums = -e} under a -> (gamma1, gamma2).

    Support-direction refinement: every hull edge of the points found so far
    is tested with an LP along its outward normal; a strictly better optimum
    adds a point, otherwise the edge is a supporting line of the true polygon.
    """
    inp.check_in_cone()
    lp = _cell_lp(inp)
    cs = [Fraction(p.card_s) for p in ALL_PAIRS]
    ct = [Fraction(p.card_t) for p in ALL_PAIRS]
    certs: dict = {}

    def support(w1, w2):
        res = lp.maximize([w1 * s + w2 * t for s, t in zip(cs, ct)])
        x = res.x
        g = (sum((s * v for s, v in zip(cs, x)), Fraction(0)),
             sum((t * v for t, v in zip(ct, x)), Fraction(0)))
        certs.setdefault(g, x)
        return g, res.value

    for w in ((1, 0), (0, 1), (-1, 0), (0, -1)):
        support(*w)

    hull = _hull(certs)
    if len(hull) == 2:
        # collinear so far: probe both sides of the line
        (p1, p2), (q1, q2) = hull
        nx, ny = q2 - p2, p1 - q1
        for sgn in (1, -1):
            _, val = support(sgn * nx, sgn * ny)
            if val > sgn * (nx * p1 + ny * p2):
                break
        hull = _hull(certs)

    if len(hull) >= 3:
        confirmed = set()
        while True:
            new_point = False
            for k in range(len(hull)):
                p, q = hull[k], hull[(k + 1) % len(hull)]
                if (p, q) in confirmed:
                    continue
                nx, ny = q[1] - p[1], p[0] - q[0]  # outward for a ccw hull
                _, val = support(nx, ny)
                if val > nx * p[0] + ny * p[1]:
                    new_point = True
                    break
                confirmed.add((p, q))
            if not new_point:
                break
            hull = _hull(certs)

    vertices = tuple(hull)
    certificates = tuple(
        {p: v for p, v in zip(ALL_PAIRS, certs[g]) if v != 0} for g in vertices
    )
    return GammaPolygon(vertices, certificates)


def max_delta_on_polygon(vertices: Sequence, d1, d2) -> tuple:
    """Exact maximum of d1 g2 + d2 g1 - g1 g2 over a convex polygon.

    The objective is bilinear with an indefinite Hessian, so its maximum sits
    on the boundary: at a vertex or at the critical point of the quadratic
    restriction to an edge (concave exactly when the edge direction u has
    u1 u2 > 0).  Returns ``(value, k, t)``: the point is
    ``(1 - t) * vertices[k] + t * vertices[k + 1]``, with ``t == 0`` at a vertex.
    """
    d1, d2 = Fraction(d1), Fraction(d2)
    best = None
    for k, g in enumerate(vertices):
        val = denominator_delta(d1, d2, *g)
        if best is None or val > best[0]:
            best = (val, k, Fraction(0))
    n = len(vertices)
    edges = range(n) if n >= 3 else range(n - 1)
    for k in edges:
        (p1, p2), (q1, q2) = vertices[k], vertices[(k + 1) % n]
        u1, u2 = q1 - p1, q2 - p2
        curv = u1 * u2
        if curv <= 0:
            continue
        t = (d1 * u2 + d2 * u1 - p1 * u2 - p2 * u1) / (2 * curv)
        if not 0 < t < 1:
            continue
        val = denominator_delta(d1, d2, p1 + t * u1, p2 + t * u2)
        if val > best[0]:
            best = (val, k, t)
    return best


def optimize_denominator(inp: AmpleDivisorInput) -> ConeDecomposition:
    """Feasible decomposition maximizing d1 g2 + d2 g1 - g1 g2.

    An optimum inside an edge is realised by the matching convex combination
    of the two vertex certificates (the feasible set is convex and the gammas
    are linear in a).
    """
    poly = gamma_polygon(inp)
    verts, certs = poly.vertices, poly.certificates
    _, k, t = max_delta_on_polygon(verts, inp.d1, inp.d2)
    if t == 0:
        return _finish(inp, certs[k])
    a = {}
    for p, v in certs[k].items():
        a[p] = a.get(p, Fraction(0)) + (1 - t) * v
    for p, v in certs[(k + 1) % len(verts)].items():
        a[p] = a.get(p, Fraction(0)) + t * v
    return _finish(inp, a)
