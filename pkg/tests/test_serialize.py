import json
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kummer_strata.cone import AmpleDivisorInput, Strategy, decompose
from kummer_strata.errors import NonPositiveDenominator, NotAmpleLike
from kummer_strata.region import CountSample
from kummer_strata.serialize import (
    DocumentError,
    decomposition_from_json,
    decomposition_to_json,
    divisor_from_json,
    divisor_to_json,
    fmt_q,
    input_to_document,
    parse_document,
    parse_q,
    report_from_json,
    report_to_json,
    samples_from_csv,
    samples_to_csv,
)
from kummer_strata.strata import first_layer_report
from kummer_strata.verify import random_input

UNIFORM = {"d1": "5", "d2": "5", "e": [["-1"] * 4 for _ in range(4)]}


@given(st.fractions())
def test_rational_round_trip(q):
    assert parse_q(fmt_q(q)) == q


def test_parse_q():
    assert parse_q("-3/6") == Fraction(-1, 2)
    assert parse_q(7) == 7
    assert parse_q(" 4 ") == 4
    for bad in (0.5, True, "1/0", "a/b", "1.5", None):
        with pytest.raises(DocumentError):
            parse_q(bad)


class TestDocument:
    def test_defaults(self):
        inp, opts = parse_document(json.dumps(UNIFORM))
        assert inp == AmpleDivisorInput.uniform(5, 5, -1)
        assert opts == {"strategy": Strategy.CANONICAL, "field_degree": 1, "sweep": []}

    def test_options(self):
        doc = dict(UNIFORM, strategy="OptimizeDenominator", field_degree=2, sweep=[10, 100])
        _, opts = parse_document(json.dumps(doc))
        assert opts == {"strategy": Strategy.OPTIMIZE, "field_degree": 2, "sweep": [10, 100]}

    def test_round_trip(self):
        inp = random_input(random.Random(1))
        back, _ = parse_document(json.dumps(input_to_document(inp)))
        assert back == inp

    @pytest.mark.parametrize("doc,needle", [
        ('{"d1": 5,', "line 1"),
        ("[]", "JSON object"),
        (json.dumps(dict(UNIFORM, colour="red")), "colour"),
        (json.dumps({"d1": "5", "e": UNIFORM["e"]}), "d2"),
        (json.dumps(dict(UNIFORM, e=[["-1"] * 4] * 3)), "4x4"),
        (json.dumps(dict(UNIFORM, d1=5.0)), "d1"),
        (json.dumps(dict(UNIFORM, e=[["-1"] * 4] * 3 + [["-1", "x", "-1", "-1"]])), "e[3][1]"),
        (json.dumps(dict(UNIFORM, strategy="best")), "strategy"),
        (json.dumps(dict(UNIFORM, field_degree=0)), "field_degree"),
        (json.dumps(dict(UNIFORM, sweep=[0])), "sweep"),
    ])
    def test_diagnostics(self, doc, needle):
        with pytest.raises(DocumentError, match=needle.replace("[", r"\[").replace("]", r"\]")):
            parse_document(doc)


def test_divisor_round_trip():
    d = random_input(random.Random(2)).to_divisor()
    assert divisor_from_json(json.loads(json.dumps(divisor_to_json(d)))) == d
    with pytest.raises(DocumentError):
        divisor_from_json(["1"] * 17)


@pytest.mark.parametrize("strategy", list(Strategy))
def test_decomposition_round_trip(strategy):
    dec = decompose(random_input(random.Random(3)), strategy)
    assert decomposition_from_json(json.loads(json.dumps(decomposition_to_json(dec)))) == dec


@pytest.mark.parametrize("seed", range(12))
def test_report_round_trip(seed):
    inp = random_input(random.Random(seed))
    for strategy in Strategy:
        for n in (1, 3):
            try:
                r = first_layer_report(inp, strategy, n)
            except (NotAmpleLike, NonPositiveDenominator):
                continue
            text = json.dumps(report_to_json(r))
            assert report_from_json(json.loads(text)) == r


def test_report_fields_are_exact_strings():
    out = report_to_json(first_layer_report(AmpleDivisorInput.uniform(5, 5, -1)))
    assert out["alpha"] == "2/3" and out["error_exponent_q"] == "1"
    assert out["minimal_curves"] == ["L1", "L2", "L3", "L4", "M1", "M2", "M3", "M4"]


class TestCsv:
    def test_format(self):
        assert samples_to_csv([CountSample(10, 4)]) == "B,count\n10,4\n"
        assert samples_to_csv([]) == "B,count\n"

    def test_round_trip(self):
        samples = [CountSample(B, B * B) for B in (1, 5, 9)]
        assert samples_from_csv(samples_to_csv(samples)) == samples

    def test_errors(self):
        with pytest.raises(DocumentError, match="line 1"):
            samples_from_csv("x,y\n1,2\n")
        with pytest.raises(DocumentError, match="line 3"):
            samples_from_csv("B,count\n1,2\n3,four\n")
