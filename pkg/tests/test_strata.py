import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kummer_strata.cone import AmpleDivisorInput, Strategy, decompose, gammas, reconstruct
from kummer_strata.errors import NonPositiveDenominator, NonPositiveFiberDegree, NotAmpleLike, NotInCone
from kummer_strata.lattice import F1, F2, FULL_PAIR, CurveLabel, a_class
from kummer_strata.strata import (
    EXPONENT_NOTE,
    TheoremCase,
    alpha,
    alpha_terms,
    check_condition2,
    classify_case,
    closed_form_degrees,
    curve_degrees,
    error_exponent,
    first_layer_report,
    min_degree,
)
from kummer_strata.verify import random_decomposition, random_input

Q = Fraction
LS = [CurveLabel.L(i) for i in range(1, 5)]
MS = [CurveLabel.M(j) for j in range(1, 5)]


class TestAlpha:
    @pytest.mark.parametrize("args,expected", [
        ((4, 4, 1, 1), Q(2, 3)),
        ((4, 4, 0, 0), Q(1)),
        ((4, 4, 4, 0), Q(1, 2)),
    ])
    def test_examples(self, args, expected):
        assert alpha(*args) == expected

    def test_terms(self):
        assert alpha_terms(4, 4, 1, 1) == (Q(16, 24), Q(2, 5), Q(2, 5))

    def test_errors(self):
        with pytest.raises(NonPositiveDenominator):
            alpha(16, 16, -11, -11)
        # den = 1 - 3 + 3 = 1 > 0 but g1 + c1 = -2
        with pytest.raises(NonPositiveFiberDegree):
            alpha(1, 1, -3, 3)


class TestCase:
    def test_case_iv(self):
        assert classify_case(4, 4, 1, 1) == TheoremCase("IV")
        assert not TheoremCase("IV").log_factor

    def test_case_i(self):
        assert classify_case(4, 4, 4, 0).label == "I"
        assert classify_case(4, 4, 0, 4).label == "I"
        assert TheoremCase("I").log_factor

    @settings(max_examples=200, deadline=None)
    @given(st.fractions(min_value=Q(1, 4), max_value=10, max_denominator=4),
           st.fractions(min_value=Q(1, 4), max_value=10, max_denominator=4),
           st.fractions(min_value=-3, max_value=10, max_denominator=4))
    def test_ii_and_iii_collapse_into_i(self, g1, g2, c1):
        # c2 = g1 + c1 makes the denominator (g1 + c1)(g1 + g2), so the first
        # term equals 2/(g1 + c1) and case I always matches as well
        c2 = g1 + c1
        if c2 <= 0:
            return
        t1, t2, _ = alpha_terms(g1, g2, c1, c2)
        assert t1 == t2
        assert classify_case(g1, g2, c1, c2).label == "I"
        assert classify_case(g2, g1, c2, c1).label == "I"

    def test_invalid_label(self):
        with pytest.raises(ValueError):
            TheoremCase("V")

    @settings(max_examples=200, deadline=None)
    @given(*[st.fractions(min_value=0, max_value=10, max_denominator=4)] * 2,
           *[st.fractions(min_value=-3, max_value=10, max_denominator=4)] * 2)
    def test_iv_when_no_equality(self, g1, g2, c1, c2):
        try:
            case = classify_case(g1, g2, c1, c2)
        except (NonPositiveDenominator, NonPositiveFiberDegree):
            return
        if c1 != g2 + c2 and c2 != g1 + c1:
            assert case.label == "IV"


class TestMinDegree:
    def test_block_plus_fibres(self):
        A, curves = min_degree(a_class(FULL_PAIR) + F1 + F2)
        assert A == 1
        assert sorted(curves) == sorted(LS + MS)
        assert all(v == 2 for k, v in curve_degrees(a_class(FULL_PAIR) + F1 + F2).items() if k.kind == "E")

    def test_block_alone_not_ample(self):
        with pytest.raises(NotAmpleLike, match="L1 = 0"):
            min_degree(a_class(FULL_PAIR))

    def test_negative_degree(self):
        with pytest.raises(NotAmpleLike, match="= -1"):
            min_degree(a_class(FULL_PAIR) - F1 - F2)


class TestCondition2:
    def test_examples(self):
        assert check_condition2(1, 4, 4, 1, 1) == (True, 16)
        assert check_condition2(3, 4, 4, 1, 1) == (False, 0)
        assert check_condition2(2, 4, 4, 0, 0) == (False, 0)


class TestErrorExponent:
    D = a_class(FULL_PAIR) + F1 + F2

    def test_rational_field(self):
        q, log = error_exponent(Q(2, 3), curve_degrees(self.D), 1)
        assert q == 1 and log
        assert q < 2

    def test_quadratic_field(self):
        q, log = error_exponent(Q(2, 3), curve_degrees(self.D), 2)
        assert q == Q(3, 2) and not log

    def test_all_minimal(self):
        degs = {label: Q(3) for label in curve_degrees(self.D)}
        q, _ = error_exponent(Q(1, 2), degs, 1)
        assert q == max(Q(1, 2), Q(1, 3))

    def test_alpha_dominates_with_log(self):
        degs = {label: Q(1) for label in curve_degrees(self.D)}
        q, log = error_exponent(Q(3, 2), degs, 1, alpha_log=True)
        assert q == Q(3, 2) and log

    def test_requires_gap(self):
        with pytest.raises(ValueError):
            error_exponent(Q(2), curve_degrees(self.D), 1)


class TestReport:
    def test_canonical_uniform(self):
        r = first_layer_report(AmpleDivisorInput.uniform(5, 5, -1), Strategy.CANONICAL, 1)
        assert (r.gamma1, r.gamma2, r.c1, r.c2) == (4, 4, 1, 1)
        assert r.alpha == Q(2, 3) and r.case.label == "IV"
        assert r.min_degree_A == 1 and sorted(r.minimal_curves) == sorted(LS + MS)
        assert r.condition2_ok and r.condition2_margin == 16
        assert r.curve_exponent == 2 and r.error_exponent_q == 1 and r.error_log_factor
        assert r.first_layer == r.minimal_curves
        assert EXPONENT_NOTE in r.warnings

    @pytest.mark.parametrize("strategy", list(Strategy))
    def test_not_ample(self, strategy):
        with pytest.raises(NotAmpleLike):
            first_layer_report(AmpleDivisorInput.uniform(4, 4, -1), strategy)

    def test_singleton_denominator(self):
        with pytest.raises(NonPositiveDenominator, match="optimize"):
            first_layer_report(AmpleDivisorInput.uniform(5, 5, -1), Strategy.SINGLETON)

    def test_not_in_cone(self):
        e = [[-1] * 4 for _ in range(4)]
        e[3][3] = Q(1, 2)
        with pytest.raises(NotInCone):
            first_layer_report(AmpleDivisorInput(5, 5, e))

    def test_condition2_failure_warns(self):
        e = [[-8, -7, -3, -7], [-7, -3, -4, -8], [-6, -9, -3, -6], [-8, -11, -11, -2]]
        inp = AmpleDivisorInput(Q(31, 2), Q(49, 2), tuple(tuple(Q(v, 2) for v in row) for row in e))
        r = first_layer_report(inp, Strategy.CANONICAL)
        assert not r.condition2_ok and r.condition2_margin == Q(-79, 4)
        assert r.error_exponent_q is None and r.first_layer is None
        assert any("inconclusive" in w and "optimize" in w for w in r.warnings)

    def test_field_degree_validated(self):
        with pytest.raises(ValueError):
            first_layer_report(AmpleDivisorInput.uniform(5, 5, -1), N=0)


class TestInvariants:
    @pytest.mark.parametrize("seed", range(30))
    def test_degree_formula_equivalence(self, seed):
        dec = random_decomposition(random.Random(seed))
        assert closed_form_degrees(dec) == curve_degrees(reconstruct(dec))

    @pytest.mark.parametrize("seed", range(20))
    def test_scale_covariance(self, seed):
        rng = random.Random(seed)
        inp = random_input(rng)
        k = Q(rng.randint(1, 9), rng.randint(1, 9))
        scaled = AmpleDivisorInput(k * inp.d1, k * inp.d2, tuple(tuple(k * v for v in row) for row in inp.e))
        dec, dec_k = decompose(inp), decompose(scaled)
        g, gk = gammas(dec), gammas(dec_k)
        assert gk == (k * g[0], k * g[1])
        try:
            A, _ = min_degree(inp.to_divisor())
        except NotAmpleLike:
            with pytest.raises(NotAmpleLike):
                min_degree(scaled.to_divisor())
            return
        Ak, _ = min_degree(scaled.to_divisor())
        assert Ak == k * A
        ok, margin = check_condition2(A, *g, dec.c1, dec.c2)
        okk, margink = check_condition2(Ak, *gk, dec_k.c1, dec_k.c2)
        assert ok == okk and margink == k * k * margin
        try:
            a = alpha(*g, dec.c1, dec.c2)
        except NonPositiveDenominator:
            return
        assert alpha(*gk, dec_k.c1, dec_k.c2) == a / k

    def test_theorem_check_on_random_reports(self):
        rng = random.Random(5)
        checked = 0
        for _ in range(40):
            inp = random_input(rng)
            for s in (Strategy.CANONICAL, Strategy.OPTIMIZE):
                try:
                    r = first_layer_report(inp, s)
                except (NotAmpleLike, NonPositiveDenominator):
                    continue
                if r.condition2_ok:
                    checked += 1
                    assert 2 / r.min_degree_A > r.alpha
                    assert r.error_exponent_q < r.curve_exponent
                    assert all(v > 0 for v in curve_degrees(inp.to_divisor()).values())
        assert checked > 10
