"""JSON and CSV formats.  Rationals travel as exact "p/q" strings."""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Iterable

from .cone import AmpleDivisorInput, ConeDecomposition, Strategy, gammas
from .lattice import CurveLabel, DivisorClass, SubsetPair
from .region import CountSample, GrowthFit
from .strata import StrataReport, TheoremCase

DOCUMENT_FIELDS = {"d1", "d2", "e", "strategy", "field_degree", "sweep"}


class DocumentError(ValueError):
    """Malformed input document; the message names the offending field or line."""


def fmt_q(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_q(value, where: str = "value") -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise DocumentError(f"{where}: expected an integer or a \"p/q\" string, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise DocumentError(f"{where}: expected a rational string, got {type(value).__name__}")
    text = value.strip().replace("−", "-")
    num, slash, den = text.partition("/")
    try:
        n = int(num)
        d = int(den) if slash else 1
    except ValueError:
        raise DocumentError(f"{where}: {value!r} is not of the form p or p/q") from None
    if d == 0:
        raise DocumentError(f"{where}: zero denominator in {value!r}")
    return Fraction(n, d)


def divisor_to_json(d: DivisorClass) -> list:
    return [fmt_q(c) for c in d.coords]


def divisor_from_json(items) -> DivisorClass:
    if not isinstance(items, list) or len(items) != 18:
        raise DocumentError("divisor: expected an array of 18 rationals")
    return DivisorClass(tuple(parse_q(v, f"divisor[{k}]") for k, v in enumerate(items)))


def decomposition_to_json(dec: ConeDecomposition) -> dict:
    g1, g2 = gammas(dec)
    return {
        "a": [{"S": p.S, "T": p.T, "a": fmt_q(v)} for p, v in dec.a.items()],
        "c1": fmt_q(dec.c1),
        "c2": fmt_q(dec.c2),
        "gamma1": fmt_q(g1),
        "gamma2": fmt_q(g2),
    }


def decomposition_from_json(obj: dict) -> ConeDecomposition:
    a = {}
    for k, entry in enumerate(obj["a"]):
        p = SubsetPair(int(entry["S"]), int(entry["T"]))
        a[p] = parse_q(entry["a"], f"a[{k}]")
    return ConeDecomposition(a, parse_q(obj["c1"], "c1"), parse_q(obj["c2"], "c2"))


_Q_FIELDS = ("gamma1", "gamma2", "c1", "c2", "denominator", "alpha", "min_degree_A",
             "condition2_margin", "curve_exponent")


def report_to_json(r: StrataReport) -> dict:
    out = {name: fmt_q(getattr(r, name)) for name in _Q_FIELDS}
    out.update(
        case=r.case.label,
        log_factor=r.case.log_factor,
        minimal_curves=[str(c) for c in r.minimal_curves],
        condition2_ok=r.condition2_ok,
        error_exponent_q=None if r.error_exponent_q is None else fmt_q(r.error_exponent_q),
        error_log_factor=r.error_log_factor,
        field_degree_N=r.field_degree_N,
        strategy=r.strategy,
        first_layer=None if r.first_layer is None else [str(c) for c in r.first_layer],
        warnings=list(r.warnings),
    )
    return out


def report_from_json(obj: dict) -> StrataReport:
    kw = {name: parse_q(obj[name], name) for name in _Q_FIELDS}
    q = obj["error_exponent_q"]
    layer = obj["first_layer"]
    return StrataReport(
        case=TheoremCase(obj["case"]),
        minimal_curves=tuple(CurveLabel.parse(s) for s in obj["minimal_curves"]),
        condition2_ok=bool(obj["condition2_ok"]),
        error_exponent_q=None if q is None else parse_q(q, "error_exponent_q"),
        error_log_factor=bool(obj["error_log_factor"]),
        field_degree_N=int(obj["field_degree_N"]),
        strategy=obj["strategy"],
        first_layer=None if layer is None else tuple(CurveLabel.parse(s) for s in layer),
        warnings=tuple(obj["warnings"]),
        **kw,
    )


def parse_document(text: str) -> tuple:
    """Parse a divisor document into (input, options).

    options holds ``strategy`` (Strategy), ``field_degree`` (int) and
    ``sweep`` (list of int), each defaulted when absent.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise DocumentError("top level: expected a JSON object")
    unknown = sorted(set(obj) - DOCUMENT_FIELDS)
    if unknown:
        raise DocumentError(f"unknown field(s): {', '.join(unknown)}")
    for name in ("d1", "d2", "e"):
        if name not in obj:
            raise DocumentError(f"missing required field {name!r}")
    d1 = parse_q(obj["d1"], "d1")
    d2 = parse_q(obj["d2"], "d2")
    e = obj["e"]
    if not isinstance(e, list) or len(e) != 4 or any(not isinstance(r, list) or len(r) != 4 for r in e):
        raise DocumentError("e: expected a 4x4 array")
    e = tuple(tuple(parse_q(v, f"e[{i}][{j}]") for j, v in enumerate(row)) for i, row in enumerate(e))

    try:
        strategy = Strategy.parse(obj.get("strategy", "canonical"))
    except (ValueError, AttributeError):
        raise DocumentError(f"strategy: unknown value {obj.get('strategy')!r}") from None
    n = obj.get("field_degree", 1)
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise DocumentError(f"field_degree: expected an integer >= 1, got {n!r}")
    sweep = obj.get("sweep", [])
    if not isinstance(sweep, list) or any(isinstance(b, bool) or not isinstance(b, int) or b < 1 for b in sweep):
        raise DocumentError("sweep: expected an array of positive integers")
    return AmpleDivisorInput(d1, d2, e), {"strategy": strategy, "field_degree": n, "sweep": sweep}


def input_to_document(inp: AmpleDivisorInput, **options) -> dict:
    doc = {"d1": fmt_q(inp.d1), "d2": fmt_q(inp.d2), "e": [[fmt_q(v) for v in row] for row in inp.e]}
    doc.update(options)
    return doc


def samples_to_csv(samples: Iterable[CountSample]) -> str:
    lines = ["B,count"] + [f"{s.B},{s.count}" for s in samples]
    return "\n".join(lines) + "\n"


def samples_from_csv(text: str) -> list:
    reader = csv.reader(io.StringIO(text))
    rows = [r for r in reader if r]
    if not rows or [c.strip() for c in rows[0]] != ["B", "count"]:
        raise DocumentError("line 1: expected header 'B,count'")
    out = []
    for lineno, row in enumerate(rows[1:], start=2):
        try:
            B, count = (int(c) for c in row)
        except ValueError:
            raise DocumentError(f"line {lineno}: expected two integers, got {','.join(row)!r}") from None
        out.append(CountSample(B, count))
    return out


def fit_to_json(fit: GrowthFit) -> dict:
    return {"slope": fit.slope, "intercept": fit.intercept,
            "r_squared": fit.r_squared, "n_tail": fit.n_tail}
