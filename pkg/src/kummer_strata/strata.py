"""Counting exponent off the distinguished curves and the first-layer test.

Given a decomposition with totals gamma1, gamma2 and fibre corrections c1, c2,
points off the 24 curves E_ij, L_i, M_j grow at most like B^alpha with

    alpha = max( 2(g1+g2) / (g1 g2 + g2 c1 + g1 c2),  2/(g1+c1),  2/(g2+c2) ),

possibly times log B (cases I-III).  Each curve C of D-degree d carries about
B^(2/d) points, so when the minimal degree A satisfies 2/A > alpha the
minimal curves form the first accumulating layer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .cone import (
    AmpleDivisorInput,
    ConeDecomposition,
    Strategy,
    decompose,
    gammas,
)
from .errors import NonPositiveDenominator, NonPositiveFiberDegree, NotAmpleLike
from .lattice import CURVE_LABELS, CurveLabel, DivisorClass, degree

EXPONENT_NOTE = (
    "curve_exponent is 2/A, the Schanuel exponent of a degree-A rational curve; "
    "the alternative 8/A normalisation of the main term is not used"
)


@dataclass(frozen=True)
class TheoremCase:
    label: str

    def __post_init__(self):
        if self.label not in ("I", "II", "III", "IV"):
            raise ValueError(f"invalid case label {self.label!r}")

    @property
    def log_factor(self) -> bool:
        return self.label != "IV"


def _q(*values):
    return tuple(Fraction(v) for v in values)


def theorem_denominator(g1, g2, c1, c2) -> Fraction:
    g1, g2, c1, c2 = _q(g1, g2, c1, c2)
    return g1 * g2 + g2 * c1 + g1 * c2


def alpha_terms(g1, g2, c1, c2) -> tuple:
    """The three candidate exponents, after checking the positivity hypotheses."""
    g1, g2, c1, c2 = _q(g1, g2, c1, c2)
    den = theorem_denominator(g1, g2, c1, c2)
    if den <= 0:
        raise NonPositiveDenominator(f"g1*g2 + g2*c1 + g1*c2 = {den} <= 0")
    for k, s in ((1, g1 + c1), (2, g2 + c2)):
        if s <= 0:
            raise NonPositiveFiberDegree(f"gamma{k} + c{k} = {s} <= 0")
    return 2 * (g1 + g2) / den, 2 / (g1 + c1), 2 / (g2 + c2)


def alpha(g1, g2, c1, c2) -> Fraction:
    return max(alpha_terms(g1, g2, c1, c2))


def classify_case(g1, g2, c1, c2) -> TheoremCase:
    g1, g2, c1, c2 = _q(g1, g2, c1, c2)
    t1, t2, t3 = alpha_terms(g1, g2, c1, c2)
    a = max(t1, t2, t3)
    # overlapping cases resolve to the lowest label
    if a == t1 and (c1 == g2 + c2 or c2 == g1 + c1):
        return TheoremCase("I")
    if a == t2 and c2 == g1 + c1:
        return TheoremCase("II")
    if a == t3 and c1 == g2 + c2:
        return TheoremCase("III")
    return TheoremCase("IV")


def curve_degrees(d: DivisorClass) -> dict:
    return {label: degree(d, label) for label in CURVE_LABELS}


def closed_form_degrees(dec: ConeDecomposition) -> dict:
    """Degrees of the 24 curves straight from the a's and c's.

    deg E_mn = 2 * sum_{S∋m, T∋n} a;  deg L_n = c2 + sum_{S∌n} card(T) a;
    deg M_n = c1 + sum_{T∌n} card(S) a.
    """
    out = {}
    for label in CURVE_LABELS:
        if label.kind == "E":
            v = 2 * sum((a for p, a in dec.a.items() if p.covers(label.i, label.j)), Fraction(0))
        elif label.kind == "L":
            n = label.i
            v = dec.c2 + sum((p.card_t * a for p, a in dec.a.items() if n not in p.s_set), Fraction(0))
        else:
            n = label.j
            v = dec.c1 + sum((p.card_s * a for p, a in dec.a.items() if n not in p.t_set), Fraction(0))
        out[label] = v
    return out


def min_degree(d: DivisorClass) -> tuple:
    """Minimal D-degree A over the 24 curves and the curves attaining it."""
    degs = curve_degrees(d)
    bad = [f"deg {label} = {v}" for label, v in degs.items() if v <= 0]
    if bad:
        raise NotAmpleLike("non-positive curve degree: " + ", ".join(bad))
    A = min(degs.values())
    return A, [label for label, v in degs.items() if v == A]


def check_condition2(A, g1, g2, c1, c2) -> tuple:
    A = Fraction(A)
    margin = theorem_denominator(g1, g2, c1, c2) - A * (Fraction(g1) + Fraction(g2))
    return margin > 0, margin


def schanuel_error_exponent(A, N: int = 1) -> Fraction:
    """Exponent of the Schanuel error on a degree-A curve (log B factor when N == 1)."""
    A = Fraction(A)
    if N > 1:
        return 2 / A - 1 / (N * A)
    return 1 / A


def error_exponent(alpha_value, degrees: Mapping[CurveLabel, Fraction], N: int = 1,
                   alpha_log: bool = False) -> tuple:
    """Error exponent q and whether the dominant contribution carries a log B.

    q is the max of alpha, 2/deg C over the non-minimal curves, and the
    Schanuel error exponent on the minimal ones.  Requires 2/A > alpha, which
    is what condition (2) buys.
    """
    if N < 1:
        raise ValueError(f"field degree must be >= 1, got {N}")
    alpha_value = Fraction(alpha_value)
    A = min(degrees.values())
    if A <= 0:
        raise NotAmpleLike(f"minimal curve degree {A} <= 0")
    if not 2 / A > alpha_value:
        raise ValueError(f"2/A = {2 / A} does not exceed alpha = {alpha_value}")
    # (exponent, carries log) pairs
    terms = [(alpha_value, alpha_log)]
    terms += [(2 / v, False) for v in degrees.values() if v != A]
    terms.append((schanuel_error_exponent(A, N), N == 1))
    q = max(t for t, _ in terms)
    return q, any(flag for t, flag in terms if t == q)


@dataclass(frozen=True)
class StrataReport:
    gamma1: Fraction
    gamma2: Fraction
    c1: Fraction
    c2: Fraction
    denominator: Fraction
    alpha: Fraction
    case: TheoremCase
    min_degree_A: Fraction
    minimal_curves: tuple
    condition2_ok: bool
    condition2_margin: Fraction
    curve_exponent: Fraction
    error_exponent_q: Fraction | None
    error_log_factor: bool
    field_degree_N: int = 1
    strategy: str = Strategy.CANONICAL.value
    first_layer: tuple | None = None
    warnings: tuple = field(default_factory=tuple)


def first_layer_report(inp: AmpleDivisorInput, strategy: Strategy = Strategy.CANONICAL,
                       N: int = 1) -> StrataReport:
    if N < 1:
        raise ValueError(f"field degree must be >= 1, got {N}")
    dec = decompose(inp, strategy)
    warnings = list(inp.warnings)

    A, minimal = min_degree(inp.to_divisor())
    g1, g2 = gammas(dec)
    try:
        a = alpha(g1, g2, dec.c1, dec.c2)
    except NonPositiveDenominator as exc:
        hint = "" if strategy is Strategy.OPTIMIZE else "; retry with strategy 'optimize'"
        raise NonPositiveDenominator(f"{exc} under strategy '{strategy.value}'{hint}") from None
    case = classify_case(g1, g2, dec.c1, dec.c2)
    ok, margin = check_condition2(A, g1, g2, dec.c1, dec.c2)

    q, log_q, layer = None, False, None
    if ok:
        q, log_q = error_exponent(a, curve_degrees(inp.to_divisor()), N, case.log_factor)
        layer = tuple(minimal)
    else:
        hint = "" if strategy is Strategy.OPTIMIZE else "; retry with strategy 'optimize'"
        warnings.append(
            f"condition (2) fails (margin {margin}): the first-layer criterion is "
            f"inconclusive for this decomposition{hint}")
    warnings.append(EXPONENT_NOTE)

    return StrataReport(
        gamma1=g1, gamma2=g2, c1=dec.c1, c2=dec.c2,
        denominator=theorem_denominator(g1, g2, dec.c1, dec.c2),
        alpha=a, case=case, min_degree_A=A, minimal_curves=tuple(minimal),
        condition2_ok=ok, condition2_margin=margin, curve_exponent=2 / A,
        error_exponent_q=q, error_log_factor=log_q, field_degree_N=N,
        strategy=strategy.value, first_layer=layer, warnings=tuple(warnings),
    )
