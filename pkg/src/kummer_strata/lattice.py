"""The rank-18 lattice spanned by F1, F2 and the exceptional curves E_ij.

Coordinates are exact rationals in the fixed basis

    F1, F2, E11, E12, E13, E14, E21, ..., E44      (row-major in E)

so a class serializes unambiguously as an 18-element vector.  L_i and M_j
have half-integer coordinates, which is why the lattice is modelled over
the rationals rather than the integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

DIM = 18
N4 = (1, 2, 3, 4)
FULL_MASK = 0b1111

# Gram form on the basis: F1.F2 = 2, F_k^2 = 0, F_k.E_ij = 0, E_ij.E_kl = -2 delta.
_F1F2 = 2
_ESQ = -2


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _cell(i: int, j: int) -> int:
    """Coordinate index of E_ij (1-based i, j)."""
    if not (1 <= i <= 4 and 1 <= j <= 4):
        raise ValueError(f"E index out of range: ({i}, {j})")
    return 2 + 4 * (i - 1) + (j - 1)


@dataclass(frozen=True)
class DivisorClass:
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != DIM:
            raise ValueError(f"expected {DIM} coordinates, got {len(self.coords)}")
        object.__setattr__(self, "coords", tuple(_q(c) for c in self.coords))

    @classmethod
    def from_parts(cls, f1, f2, e: Sequence[Sequence] | None = None) -> "DivisorClass":
        coords = [_q(f1), _q(f2)] + [Fraction(0)] * 16
        if e is not None:
            if len(e) != 4 or any(len(row) != 4 for row in e):
                raise ValueError("e must be a 4x4 array")
            for i in range(4):
                for j in range(4):
                    coords[2 + 4 * i + j] = _q(e[i][j])
        return cls(tuple(coords))

    @classmethod
    def zero(cls) -> "DivisorClass":
        return cls((Fraction(0),) * DIM)

    @property
    def f1(self) -> Fraction:
        return self.coords[0]

    @property
    def f2(self) -> Fraction:
        return self.coords[1]

    @property
    def e(self) -> tuple:
        """4x4 tuple of E-coefficients, ``e[i-1][j-1]`` is the coefficient of E_ij."""
        return tuple(tuple(self.coords[2 + 4 * i: 6 + 4 * i]) for i in range(4))

    def e_at(self, i: int, j: int) -> Fraction:
        return self.coords[_cell(i, j)]

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(tuple(-a for a in self.coords))

    def __mul__(self, k) -> "DivisorClass":
        k = _q(k)
        return DivisorClass(tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    def __str__(self):
        terms = []
        for name, c in (("F1", self.f1), ("F2", self.f2)):
            if c:
                terms.append(f"{c}*{name}")
        for i, j in product(N4, N4):
            c = self.e_at(i, j)
            if c:
                terms.append(f"{c}*E{i}{j}")
        return " + ".join(terms) or "0"


F1 = DivisorClass.from_parts(1, 0)
F2 = DivisorClass.from_parts(0, 1)


@dataclass(frozen=True, order=True)
class CurveLabel:
    """One of E(i,j), L(i), M(j), Fiber1, Fiber2.

    ``i`` and ``j`` are 1-based; unused indices are 0.
    """

    kind: str
    i: int = 0
    j: int = 0

    def __post_init__(self):
        ok = {
            "E": 1 <= self.i <= 4 and 1 <= self.j <= 4,
            "L": 1 <= self.i <= 4 and self.j == 0,
            "M": self.i == 0 and 1 <= self.j <= 4,
            "Fiber1": self.i == 0 and self.j == 0,
            "Fiber2": self.i == 0 and self.j == 0,
        }.get(self.kind)
        if not ok:
            raise ValueError(f"invalid curve label {self.kind}({self.i},{self.j})")

    @classmethod
    def E(cls, i: int, j: int) -> "CurveLabel":
        return cls("E", i, j)

    @classmethod
    def L(cls, i: int) -> "CurveLabel":
        return cls("L", i, 0)

    @classmethod
    def M(cls, j: int) -> "CurveLabel":
        return cls("M", 0, j)

    def __str__(self):
        if self.kind == "E":
            return f"E{self.i}{self.j}"
        if self.kind == "L":
            return f"L{self.i}"
        if self.kind == "M":
            return f"M{self.j}"
        return self.kind

    @classmethod
    def parse(cls, text: str) -> "CurveLabel":
        if text in ("Fiber1", "Fiber2"):
            return cls(text)
        if len(text) == 3 and text[0] == "E":
            return cls.E(int(text[1]), int(text[2]))
        if len(text) == 2 and text[0] == "L":
            return cls.L(int(text[1]))
        if len(text) == 2 and text[0] == "M":
            return cls.M(int(text[1]))
        raise ValueError(f"cannot parse curve label {text!r}")


# The 24 distinguished smooth rational curves, in a fixed order.
CURVE_LABELS = tuple(
    [CurveLabel.E(i, j) for i, j in product(N4, N4)]
    + [CurveLabel.L(i) for i in N4]
    + [CurveLabel.M(j) for j in N4]
)


def curve_class(label: CurveLabel) -> DivisorClass:
    """Class of a distinguished curve.

    L_i and M_j come from the fibre decompositions F1 = sum_j E_ij + 2 L_i and
    F2 = sum_i E_ij + 2 M_j.
    """
    half = Fraction(1, 2)
    if label.kind == "E":
        coords = [Fraction(0)] * DIM
        coords[_cell(label.i, label.j)] = Fraction(1)
        return DivisorClass(tuple(coords))
    if label.kind == "L":
        coords = [half, Fraction(0)] + [Fraction(0)] * 16
        for j in N4:
            coords[_cell(label.i, j)] = -half
        return DivisorClass(tuple(coords))
    if label.kind == "M":
        coords = [Fraction(0), half] + [Fraction(0)] * 16
        for i in N4:
            coords[_cell(i, label.j)] = -half
        return DivisorClass(tuple(coords))
    if label.kind == "Fiber1":
        return F1
    return F2


def mask_to_set(mask: int) -> frozenset:
    return frozenset(k for k in N4 if mask >> (k - 1) & 1)


def set_to_mask(items: Iterable[int]) -> int:
    mask = 0
    for k in items:
        if k not in N4:
            raise ValueError(f"subset element {k} not in 1..4")
        mask |= 1 << (k - 1)
    return mask


@dataclass(frozen=True, order=True)
class SubsetPair:
    """Pair (S, T) of non-empty subsets of {1,2,3,4}, stored as 4-bit masks."""

    S: int
    T: int

    def __post_init__(self):
        if not (1 <= self.S <= FULL_MASK and 1 <= self.T <= FULL_MASK):
            raise ValueError(f"subset masks must be in 1..15, got ({self.S}, {self.T})")

    @classmethod
    def of(cls, S: Iterable[int], T: Iterable[int]) -> "SubsetPair":
        return cls(set_to_mask(S), set_to_mask(T))

    @property
    def s_set(self) -> frozenset:
        return mask_to_set(self.S)

    @property
    def t_set(self) -> frozenset:
        return mask_to_set(self.T)

    @property
    def card_s(self) -> int:
        return bin(self.S).count("1")

    @property
    def card_t(self) -> int:
        return bin(self.T).count("1")

    def covers(self, m: int, n: int) -> bool:
        return bool(self.S >> (m - 1) & 1 and self.T >> (n - 1) & 1)


FULL_PAIR = SubsetPair(FULL_MASK, FULL_MASK)


def all_subset_pairs() -> list:
    """All 225 pairs, ordered by (S mask, T mask)."""
    return [SubsetPair(s, t) for s in range(1, 16) for t in range(1, 16)]


def singleton_pair(i: int, j: int) -> SubsetPair:
    return SubsetPair(1 << (i - 1), 1 << (j - 1))


def a_class(p: SubsetPair) -> DivisorClass:
    """card(S) F1 + card(T) F2 - sum over i in S, j in T of E_ij."""
    coords = [Fraction(p.card_s), Fraction(p.card_t)] + [Fraction(0)] * 16
    for i in p.s_set:
        for j in p.t_set:
            coords[_cell(i, j)] = Fraction(-1)
    return DivisorClass(tuple(coords))


def pair(d1: DivisorClass, d2: DivisorClass) -> Fraction:
    """Intersection number, the bilinear extension of the Gram form."""
    a, b = d1.coords, d2.coords
    s = _F1F2 * (a[0] * b[1] + a[1] * b[0])
    s += _ESQ * sum(x * y for x, y in zip(a[2:], b[2:]))
    return _q(s)


def degree(d: DivisorClass, label: CurveLabel) -> Fraction:
    """deg_D of a curve, i.e. D . C."""
    return pair(d, curve_class(label))


def _bareiss_rank(rows: list) -> int:
    # rows: integer matrix, modified in place
    m = len(rows)
    n = len(rows[0]) if m else 0
    rank = 0
    prev = 1
    for col in range(n):
        piv = next((r for r in range(rank, m) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][col]
        for r in range(rank + 1, m):
            f = rows[r][col]
            rows[r] = [(p * rows[r][c] - f * rows[rank][c]) // prev for c in range(n)]
        prev = p
        rank += 1
        if rank == m:
            break
    return rank


def rank_of_span(classes: Sequence[DivisorClass]) -> int:
    """Exact rank over Q of the coordinate matrix (fraction-free elimination)."""
    if not classes:
        raise ValueError("rank_of_span needs at least one class")
    rows = []
    for d in classes:
        den = math.lcm(*(c.denominator for c in d.coords))
        rows.append([int(c * den) for c in d.coords])
    return _bareiss_rank(rows)
