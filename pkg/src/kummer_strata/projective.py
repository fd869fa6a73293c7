"""Points of bounded height on P^1(Q), and on rational curves of degree d.

Height is H(a:b) = max(|a|, |b|) for coprime integers a, b.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .region import iroot


@dataclass(frozen=True, order=True)
class ProjPoint:
    a: int
    b: int

    def __post_init__(self):
        a, b = self.a, self.b
        if a == 0 and b == 0:
            raise ValueError("(0:0) is not a projective point")
        if math.gcd(a, b) != 1:
            raise ValueError(f"({a}:{b}) is not reduced")
        if not (b > 0 or (b == 0 and a == 1)):
            raise ValueError(f"({a}:{b}) is not the canonical representative")

    @classmethod
    def canonical(cls, a: int, b: int) -> "ProjPoint":
        if a == 0 and b == 0:
            raise ValueError("(0:0) is not a projective point")
        g = math.gcd(a, b)
        a, b = a // g, b // g
        if b < 0 or (b == 0 and a < 0):
            a, b = -a, -b
        return cls(a, b)

    @property
    def height(self) -> int:
        return max(abs(self.a), abs(self.b))


def totient_table(n: int) -> list:
    phi = list(range(n + 1))
    for p in range(2, n + 1):
        if phi[p] == p:  # p is prime
            for k in range(p, n + 1, p):
                phi[k] -= phi[k] // p
    return phi


def count_p1(B: int) -> int:
    """Number of points of P^1(Q) with height at most B.

    Canonical points are (1:0), (0:1) and (±a:b) with 1 <= a, b <= B coprime.
    There are 2*Phi(B) - 1 such (a, b), where Phi is the summatory totient,
    so the total is 2 + 2(2 Phi(B) - 1) = 4 Phi(B).
    """
    if B < 1:
        raise ValueError(f"B must be >= 1, got {B}")
    return 4 * sum(totient_table(B)[1:])


def points_p1(B: int):
    """Enumerate the canonical points of height <= B (small B only)."""
    yield ProjPoint(1, 0)
    for b in range(1, B + 1):
        for a in range(-B, B + 1):
            if math.gcd(a, b) == 1:
                yield ProjPoint(a, b)


def count_degree_d(B: int, d: int) -> int:
    """Points of height <= B on a degree-d rational curve, via H = H_P1^d."""
    if B < 1 or d < 1:
        raise ValueError("B and d must be >= 1")
    return count_p1(iroot(B, d))
