"""Exact simplex for  max c.x  subject to  A x = b, x >= 0.

The tableau is kept fraction-free: every stored entry is an integer equal to
``D * (B^-1 A)`` where ``B`` is the current basis matrix and ``D > 0`` is the
running pivot (the absolute basis determinant up to the input scaling).  One
pivot therefore costs integer multiplications and exact divisions only.

Bland's rule is used for both the entering and the leaving variable, so the
method terminates on degenerate problems.  A solved instance keeps its basis,
and ``maximize`` can be called again with another objective; it restarts from
the last optimal basis, which is how the gamma-polygon code amortises its
many support-direction queries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"


class Infeasible(ValueError):
    pass


@dataclass
class LPResult:
    status: str
    value: Fraction | None
    x: list | None
    basis: list


def _lcm_den(values) -> int:
    return math.lcm(1, *(Fraction(v).denominator for v in values))


class ExactLP:
    """Equality-form LP with an exact, reusable basis.

    ``basis`` may name columns of ``A`` that already form an identity
    submatrix with the matching rows; otherwise a phase-1 problem with
    artificial variables finds a feasible basis.  Redundant equality rows are
    dropped during phase 1.
    """

    def __init__(self, A: Sequence[Sequence], b: Sequence, basis: Sequence[int] | None = None):
        m = len(A)
        if m != len(b):
            raise ValueError("A and b have different row counts")
        n = len(A[0]) if m else 0
        self.n = n

        rows = []
        rhs = []
        for row, bi in zip(A, b):
            if len(row) != n:
                raise ValueError("ragged constraint matrix")
            row = [Fraction(v) for v in row]
            bi = Fraction(bi)
            s = _lcm_den(row)
            row = [v * s for v in row]
            bi *= s
            if bi < 0:
                row = [-v for v in row]
                bi = -bi
            rows.append([int(v) for v in row])
            rhs.append(bi)
        # x = y / scale turns the right-hand side integral
        self._scale = _lcm_den(rhs)
        rhs = [int(v * self._scale) for v in rhs]

        self.D = 1
        self.z = [0] * (n + 1)
        if basis is not None and self._is_identity_basis(rows, basis):
            self.T = [r + [bi] for r, bi in zip(rows, rhs)]
            self.basis = list(basis)
        else:
            self._phase_one(rows, rhs)

    @staticmethod
    def _is_identity_basis(rows, basis) -> bool:
        if len(basis) != len(rows):
            return False
        for i, k in enumerate(basis):
            for r, row in enumerate(rows):
                if row[k] != (1 if r == i else 0):
                    return False
        return True

    # -- core -----------------------------------------------------------

    def _pivot(self, r: int, k: int) -> None:
        T, D = self.T, self.D
        pr = T[r]
        p = pr[k]
        for i, row in enumerate(T):
            if i == r:
                continue
            f = row[k]
            if f == 0:
                if p != D:
                    T[i] = [p * v // D for v in row]
            else:
                T[i] = [(p * v - f * w) // D for v, w in zip(row, pr)]
        f = self.z[k]
        self.z = [(p * v - f * w) // D for v, w in zip(self.z, pr)]
        self.D = p
        self.basis[r] = k
        if p < 0:
            self.T = [[-v for v in row] for row in self.T]
            self.z = [-v for v in self.z]
            self.D = -p

    def _set_objective(self, c_int: Sequence[int]) -> None:
        n = len(c_int)
        z = [-self.D * cj for cj in c_int] + [0]
        for row, k in zip(self.T, self.basis):
            ck = c_int[k]
            if ck:
                for j in range(n + 1):
                    z[j] += ck * row[j]
        self.z = z

    def _run(self, ncols: int) -> str:
        while True:
            z = self.z
            k = next((j for j in range(ncols) if z[j] < 0), None)
            if k is None:
                return OPTIMAL
            best = None
            for i, row in enumerate(self.T):
                a = row[k]
                if a <= 0:
                    continue
                if best is None:
                    best = i
                    continue
                rb = self.T[best]
                lhs, rhs_ = row[-1] * rb[k], rb[-1] * a
                if lhs < rhs_ or (lhs == rhs_ and self.basis[i] < self.basis[best]):
                    best = i
            if best is None:
                return UNBOUNDED
            self._pivot(best, k)

    def _phase_one(self, rows, rhs) -> None:
        m, n = len(rows), self.n
        self.T = [row + [1 if r == i else 0 for r in range(m)] + [bi]
                  for i, (row, bi) in enumerate(zip(rows, rhs))]
        self.basis = [n + i for i in range(m)]
        self.D = 1
        self._set_objective([0] * n + [-1] * m)
        self._run(n + m)
        if self.z[-1] != 0:
            raise Infeasible("equality system has no non-negative solution")
        keep = []
        for i in range(m):
            if self.basis[i] < n:
                keep.append(i)
                continue
            k = next((j for j in range(n) if self.T[i][j] != 0), None)
            if k is None:
                continue  # redundant row
            self._pivot(i, k)
            keep.append(i)
        self.T = [self.T[i][:n] + [self.T[i][-1]] for i in keep]
        self.basis = [self.basis[i] for i in keep]

    # -- public ---------------------------------------------------------

    def current_point(self) -> list:
        x = [Fraction(0)] * self.n
        den = self.D * self._scale
        for row, k in zip(self.T, self.basis):
            x[k] = Fraction(row[-1], den)
        return x

    def maximize(self, c: Sequence) -> LPResult:
        if len(c) != self.n:
            raise ValueError("objective length does not match column count")
        cs = [Fraction(v) for v in c]
        s = _lcm_den(cs)
        c_int = [int(v * s) for v in cs]
        self._set_objective(c_int)
        status = self._run(self.n)
        if status == UNBOUNDED:
            return LPResult(UNBOUNDED, None, None, list(self.basis))
        value = Fraction(self.z[-1], self.D * self._scale * s)
        return LPResult(OPTIMAL, value, self.current_point(), list(self.basis))


def maximize(c: Sequence, A: Sequence[Sequence], b: Sequence, basis=None) -> LPResult:
    """One-shot convenience wrapper around :class:`ExactLP`."""
    return ExactLP(A, b, basis).maximize(c)
