"""Self-check suites behind ``kummer-strata verify``.

Each suite yields ``Check`` records; the CLI prints one line per check.
Randomised checks draw from ``random.Random(seed)`` so runs are reproducible.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .cone import (
    CELLS,
    AmpleDivisorInput,
    ConeDecomposition,
    Strategy,
    cell_sum,
    decompose,
    denominator_delta,
    gammas,
    reconstruct,
)
from .lattice import (
    CURVE_LABELS,
    F1,
    F2,
    N4,
    CurveLabel,
    DivisorClass,
    a_class,
    all_subset_pairs,
    curve_class,
    pair,
    rank_of_span,
)
from .projective import count_degree_d, count_p1
from .region import CountSample, RegionParams, count_region, fit_exponent, in_region
from .strata import closed_form_degrees, curve_degrees

SUITES = ("lattice", "decomposition", "region", "schanuel")
DEFAULT_SEED = 20240601

# one parameter set per closed-form branch: (g1, g2, c1, c2)
REGION_GRID = (
    (4, 4, 1, 1),
    (2, 4, 1, 3),
    (4, 2, 3, 1),
    (4, 4, -1, 2),
    (4, 4, 1, 0),
    (4, 4, 4, 0),
    (4, 4, 5, -1),
    (4, 4, 3, -1),
    (Fraction(3, 2), Fraction(5, 2), Fraction(1, 2), Fraction(1, 2)),
)


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        tail = f" ({self.detail})" if self.detail else ""
        return f"{self.name}{tail} ... {'ok' if self.ok else 'FAIL'}"


def random_rational(rng: random.Random, lo: int, hi: int, max_den: int = 6) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(lo * den, hi * den), den)


def random_input(rng: random.Random) -> AmpleDivisorInput:
    """d in [1, 40], e_ij in [-5, 0) with small denominators."""
    e = []
    for _ in range(4):
        row = []
        for _ in range(4):
            v = random_rational(rng, -5, 0)
            row.append(v if v < 0 else Fraction(-1, 7))
        e.append(tuple(row))
    return AmpleDivisorInput(random_rational(rng, 1, 40), random_rational(rng, 1, 40), tuple(e))


def random_decomposition(rng: random.Random, n_terms: int = 8) -> ConeDecomposition:
    """a values in [0, 5] on random pairs, c1, c2 in [-5, 5]."""
    pairs = all_subset_pairs()
    a = {}
    for p in rng.sample(pairs, n_terms):
        a[p] = random_rational(rng, 0, 5)
    return ConeDecomposition(a, random_rational(rng, -5, 5), random_rational(rng, -5, 5))


def lattice_suite(seed: int = DEFAULT_SEED):
    classes = [a_class(p) for p in all_subset_pairs()] + [F1, F2]
    r = rank_of_span(classes)
    yield Check("rank(A_{S,T} ∪ {F1,F2}) = 18", r == 18, f"got {r}")

    special = [c for c in CURVE_LABELS]
    bad = [str(c) for c in special if pair(curve_class(c), curve_class(c)) != -2]
    yield Check("self-intersection -2 on all 24 curves", not bad, ", ".join(bad))

    L = {i: curve_class(CurveLabel.L(i)) for i in N4}
    M = {i: curve_class(CurveLabel.M(i)) for i in N4}
    table = all(
        pair(F1, L[i]) == 0 and pair(F2, M[i]) == 0
        and pair(F1, M[i]) == 1 and pair(F2, L[i]) == 1
        for i in N4
    ) and all(pair(L[i], M[j]) == 0 for i, j in product(N4, N4)) and all(
        pair(L[i], L[j]) == 0 and pair(M[i], M[j]) == 0 for i, j in product(N4, N4) if i != j
    )
    yield Check("intersection table (F.L, F.M, L.M, L.L, M.M)", table)

    fib = all(
        sum((curve_class(CurveLabel.E(i, j)) for j in N4), DivisorClass.zero()) + 2 * L[i] == F1
        and sum((curve_class(CurveLabel.E(j, i)) for j in N4), DivisorClass.zero()) + 2 * M[i] == F2
        for i in N4
    )
    yield Check("fibre decompositions F1 = ΣE_ij + 2L_i, F2 = ΣE_ij + 2M_j", fib)

    rng = random.Random(seed)
    ok = True
    for _ in range(50):
        u, v, w = (DivisorClass(tuple(random_rational(rng, -9, 9) for _ in range(18))) for _ in range(3))
        k = random_rational(rng, -9, 9)
        ok &= pair(u, v) == pair(v, u)
        ok &= pair(u + k * v, w) == pair(u, w) + k * pair(v, w)
    yield Check("pairing symmetric and bilinear (50 random triples)", ok)


def decomposition_suite(seed: int = DEFAULT_SEED, n: int = 10):
    rng = random.Random(seed)
    failures = []
    for t in range(n):
        inp = random_input(rng)
        target = inp.to_divisor()
        deltas = {}
        for s in Strategy:
            dec = decompose(inp, s)
            g1, g2 = gammas(dec)
            if reconstruct(dec) != target:
                failures.append(f"#{t} {s.value}: round-trip")
            if any(v < 0 for v in dec.a.values()):
                failures.append(f"#{t} {s.value}: negative a")
            if any(cell_sum(dec, m, nn) != -inp.e[m - 1][nn - 1] for m, nn in CELLS):
                failures.append(f"#{t} {s.value}: cell identity")
            if g1 + dec.c1 != inp.d1 or g2 + dec.c2 != inp.d2:
                failures.append(f"#{t} {s.value}: gamma + c != d")
            deltas[s] = denominator_delta(inp.d1, inp.d2, g1, g2)
        if deltas[Strategy.OPTIMIZE] < max(deltas[Strategy.CANONICAL], deltas[Strategy.SINGLETON]):
            failures.append(f"#{t}: optimizer dominance")
    yield Check(f"decomposition invariants ({n} random inputs x 3 strategies)",
                not failures, "; ".join(failures[:3]))

    ok = True
    for _ in range(n):
        dec = random_decomposition(rng)
        ok &= closed_form_degrees(dec) == curve_degrees(reconstruct(dec))
    yield Check(f"closed-form curve degrees match pairings ({n} random decompositions)", ok)


def naive_count(p: RegionParams, side: int) -> int:
    return sum(1 for x in range(1, side + 1) for y in range(1, side + 1) if in_region(x, y, p))


def region_suite(seed: int = DEFAULT_SEED, b_max: int = 10):
    for g in REGION_GRID:
        base = RegionParams(*g, B=1)
        bad = [B for B in range(1, b_max + 1)
               if count_region(base.with_B(B)) != naive_count(base.with_B(B), B * B)]
        label = "(" + ", ".join(str(Fraction(v)) for v in g) + ")"
        yield Check(f"count_region = naive loop on [1,B^2]^2, params {label}, B <= {b_max}",
                    not bad, f"mismatch at B={bad[:3]}" if bad else "")

    rng = random.Random(seed)
    ok = True
    for g in REGION_GRID:
        p = RegionParams(*g, B=rng.randint(50, 500))
        ok &= count_region(p) == count_region(p.swapped())
        counts = [count_region(p.with_B(B)) for B in range(1, 60)]
        ok &= all(a <= b for a, b in zip(counts, counts[1:]))
    yield Check("symmetry under (g1,c1,x) <-> (g2,c2,y) and monotonicity in B", ok)

    p = RegionParams(4, 4, 1, 1, 10)
    c = count_region(p)
    yield Check("count_region(g=(4,4), c=(1,1), B=10) = 4", c == 4, f"got {c}")
    samples = [CountSample(10 ** k, count_region(p.with_B(10 ** k))) for k in range(1, 6)]
    fit = fit_exponent(samples, 0.6)
    yield Check("tail slope for g=(4,4), c=(1,1) <= 0.75", fit.slope <= 0.75, f"slope {fit.slope:.4f}")


def schanuel_suite(seed: int = DEFAULT_SEED):
    yield Check("count_p1(1) = 4, count_p1(2) = 8", count_p1(1) == 4 and count_p1(2) == 8)
    brute = all(
        count_p1(B) == 2 + 2 * sum(1 for a in range(1, B + 1) for b in range(1, B + 1) if math.gcd(a, b) == 1)
        for B in range(1, 40)
    )
    yield Check("count_p1 = brute-force coprime enumeration, B < 40", brute)
    grid = [round(10 ** (1 + 3 * k / 12)) for k in range(13)]
    fit = fit_exponent([CountSample(B, count_p1(B)) for B in grid])
    yield Check("P1 slope over B = 10..10^4 is 2 ± 0.05", abs(fit.slope - 2) <= 0.05, f"slope {fit.slope:.4f}")
    for d in (2, 3):
        fit = fit_exponent([CountSample(B ** d, count_degree_d(B ** d, d)) for B in grid])
        yield Check(f"degree-{d} slope is 2/{d} ± 0.05", abs(fit.slope - 2 / d) <= 0.05,
                    f"slope {fit.slope:.4f}")
    ratio = count_p1(10 ** 4) / 10 ** 8
    yield Check("count_p1(10^4)/10^8 within 2% of 12/π²", abs(ratio / (12 / math.pi ** 2) - 1) <= 0.02,
                f"ratio {ratio:.5f}")


def run_suite(name: str, seed: int = DEFAULT_SEED) -> list:
    suites = {
        "lattice": lattice_suite,
        "decomposition": decomposition_suite,
        "region": region_suite,
        "schanuel": schanuel_suite,
    }
    names = SUITES if name == "all" else (name,)
    checks = []
    for n in names:
        checks.extend(suites[n](seed))
    return checks
