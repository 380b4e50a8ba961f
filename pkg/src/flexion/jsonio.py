"""JSON codecs for the value types and check reports.

Encodings (coefficients are decimal strings, exponent maps omit zeros):

* rational function::

    {"scalar": "p/q",
     "num": [{"c": "3", "e": {"u1": 2, "v3": 1}}, ...],
     "den": [{"f": {"v1": 1, "v2": -1}, "m": 2}, ...]}

* bimould::

    {"truncation": L, "layer": "u-const|v-const|general",
     "weight": k or null,
     "components": [{"length": r, "value": <ratfun>}, ...]}

* formal sequence sum: ``[{"seq": [1, 2], "coef": <ratfun>}, ...]``
* check report: ``{"name": ..., "params": ..., "pass": bool,
  "failures": [{"where": ..., "delta": <ratfun>}], "extras": ...,
  "duration": seconds}``

Decoding re-normalises, so write . read is the identity on canonical
output and read . write is the identity on values.  Malformed input
raises :class:`SchemaError` carrying the offending location.
"""
from __future__ import annotations

from typing import Optional

from .bimould import Bimould
from .dshuffle import FormalSeqSum
from .exactalg import LinForm, Poly, Q, RatFun, parse_var, var_name
from .report import CheckReport, Failure

__all__ = [
    "SchemaError",
    "ratfun_to_json",
    "ratfun_from_json",
    "bimould_to_json",
    "bimould_from_json",
    "seqsum_to_json",
    "seqsum_from_json",
    "report_to_json",
    "report_from_json",
]


class SchemaError(ValueError):
    """Invalid serialised value; ``location`` points at the culprit."""

    def __init__(self, location: str, message: str):
        self.location = location
        super().__init__(f"{location}: {message}")


def _expect(condition: bool, location: str, message: str) -> None:
    if not condition:
        raise SchemaError(location, message)


def _parse_rational(text, location: str) -> Q:
    _expect(isinstance(text, str), location, "rational must be a string")
    try:
        return Q(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(location, f"bad rational {text!r} ({exc})") from None


def _parse_varmap(data, location: str, *, allow_zero: bool) -> dict:
    _expect(isinstance(data, dict), location, "expected an object of variables")
    out = {}
    for name, value in data.items():
        try:
            var = parse_var(name)
        except ValueError as exc:
            raise SchemaError(location, str(exc)) from None
        _expect(isinstance(value, int) and not isinstance(value, bool),
                f"{location}.{name}", "expected an integer")
        if value == 0 and allow_zero:
            continue
        _expect(value != 0, f"{location}.{name}", "zero entry not allowed")
        out[var] = value
    return out


def ratfun_to_json(f: RatFun) -> dict:
    if f.is_zero():
        return {"scalar": "0", "num": [], "den": []}
    num = []
    for mono in sorted(f.num.terms):
        num.append(
            {
                "c": str(f.num.terms[mono]),
                "e": {var_name(v): e for v, e in mono},
            }
        )
    den = [
        {"f": {var_name(v): c for v, c in lf.coeffs}, "m": m} for lf, m in f.den
    ]
    return {"scalar": str(f.scalar), "num": num, "den": den}


def ratfun_from_json(data, location: str = "ratfun") -> RatFun:
    _expect(isinstance(data, dict), location, "expected an object")
    for key in ("scalar", "num", "den"):
        _expect(key in data, location, f"missing key {key!r}")
    scalar = _parse_rational(data["scalar"], f"{location}.scalar")
    _expect(isinstance(data["num"], list), f"{location}.num", "expected a list")
    terms: dict = {}
    for i, entry in enumerate(data["num"]):
        loc = f"{location}.num[{i}]"
        _expect(isinstance(entry, dict) and "c" in entry, loc, "expected {c, e}")
        coeff = _parse_rational(entry["c"], f"{loc}.c")
        exps = entry.get("e", {})
        _expect(isinstance(exps, dict), f"{loc}.e", "expected an object")
        mono = []
        for name, e in exps.items():
            try:
                var = parse_var(name)
            except ValueError as exc:
                raise SchemaError(f"{loc}.e", str(exc)) from None
            _expect(isinstance(e, int) and not isinstance(e, bool) and e >= 0,
                    f"{loc}.e.{name}", "exponent must be a nonnegative integer")
            if e:
                mono.append((var, e))
        key = tuple(sorted(mono))
        terms[key] = terms.get(key, Q(0)) + coeff
    num = Poly({m: c for m, c in terms.items() if c})
    den: dict = {}
    _expect(isinstance(data["den"], list), f"{location}.den", "expected a list")
    for i, entry in enumerate(data["den"]):
        loc = f"{location}.den[{i}]"
        _expect(isinstance(entry, dict) and "f" in entry, loc, "expected {f, m}")
        coeffs = _parse_varmap(entry["f"], f"{loc}.f", allow_zero=False)
        _expect(bool(coeffs), f"{loc}.f", "zero linear form")
        mult = entry.get("m", 1)
        _expect(isinstance(mult, int) and not isinstance(mult, bool) and mult >= 1,
                f"{loc}.m", "multiplicity must be a positive integer")
        scale, lf = LinForm.canonical(coeffs)
        den[lf] = den.get(lf, 0) + mult
        scalar = scalar / Q(scale) ** mult
    return RatFun._normalized(num, den, scalar)


def bimould_to_json(a: Bimould) -> dict:
    return {
        "truncation": a.truncation,
        "layer": a.layer(),
        "weight": a.weight,
        "components": [
            {"length": r, "value": ratfun_to_json(a.components[r])}
            for r in sorted(a.components)
        ],
    }


def bimould_from_json(data, location: str = "bimould") -> Bimould:
    _expect(isinstance(data, dict), location, "expected an object")
    _expect("truncation" in data and "components" in data, location,
            "missing truncation or components")
    truncation = data["truncation"]
    _expect(isinstance(truncation, int) and not isinstance(truncation, bool)
            and truncation >= 0, f"{location}.truncation",
            "expected a nonnegative integer")
    weight = data.get("weight")
    _expect(weight is None or (isinstance(weight, int) and not isinstance(weight, bool)),
            f"{location}.weight", "expected an integer or null")
    comps = {}
    _expect(isinstance(data["components"], list), f"{location}.components",
            "expected a list")
    for i, entry in enumerate(data["components"]):
        loc = f"{location}.components[{i}]"
        _expect(isinstance(entry, dict) and "length" in entry and "value" in entry,
                loc, "expected {length, value}")
        r = entry["length"]
        _expect(isinstance(r, int) and not isinstance(r, bool) and 0 <= r <= truncation,
                f"{loc}.length", "length out of range")
        value = ratfun_from_json(entry["value"], f"{loc}.value")
        _expect(r not in comps, f"{loc}.length", f"duplicate length {r}")
        if not value.is_zero():
            comps[r] = value
    try:
        out = Bimould(comps, truncation, weight=weight)
    except ValueError as exc:
        raise SchemaError(location, str(exc)) from None
    claimed = data.get("layer")
    if claimed is not None:
        _expect(claimed in ("u-const", "v-const", "general"), f"{location}.layer",
                f"unknown layer {claimed!r}")
        if claimed == "u-const":
            _expect(out.is_u_constant(), f"{location}.layer",
                    "components mention u variables")
        elif claimed == "v-const":
            _expect(out.is_v_constant(), f"{location}.layer",
                    "components mention v variables")
    return out


def seqsum_to_json(s: FormalSeqSum) -> list:
    return [
        {"seq": list(seq), "coef": ratfun_to_json(s.terms[seq])}
        for seq in sorted(s.terms)
    ]


def seqsum_from_json(data, location: str = "seqsum") -> FormalSeqSum:
    _expect(isinstance(data, list), location, "expected a list")
    out = FormalSeqSum()
    for i, entry in enumerate(data):
        loc = f"{location}[{i}]"
        _expect(isinstance(entry, dict) and "seq" in entry and "coef" in entry,
                loc, "expected {seq, coef}")
        seq = entry["seq"]
        _expect(isinstance(seq, list)
                and all(isinstance(k, int) and not isinstance(k, bool) and k >= 1
                        for k in seq),
                f"{loc}.seq", "expected a list of positive indices")
        coeff = ratfun_from_json(entry["coef"], f"{loc}.coef")
        out.add_term(tuple(seq), coeff)
    return out


def report_to_json(report: CheckReport) -> dict:
    return {
        "name": report.name,
        "params": report.params,
        "pass": report.passed,
        "failures": [
            {
                "where": f.where,
                "delta": None if f.delta is None else ratfun_to_json(f.delta),
            }
            for f in report.failures
        ],
        "extras": report.extras,
        "duration": report.duration,
    }


def report_from_json(data, location: str = "report") -> CheckReport:
    _expect(isinstance(data, dict), location, "expected an object")
    for key in ("name", "pass"):
        _expect(key in data, location, f"missing key {key!r}")
    _expect(isinstance(data["name"], str), f"{location}.name", "expected a string")
    _expect(isinstance(data["pass"], bool), f"{location}.pass", "expected a bool")
    failures = []
    for i, entry in enumerate(data.get("failures", [])):
        loc = f"{location}.failures[{i}]"
        _expect(isinstance(entry, dict) and "where" in entry, loc,
                "expected {where, delta}")
        delta = entry.get("delta")
        failures.append(
            Failure(
                entry["where"],
                None if delta is None else ratfun_from_json(delta, f"{loc}.delta"),
            )
        )
    report = CheckReport(
        name=data["name"],
        params=data.get("params", {}),
        passed=data["pass"],
        failures=failures,
        extras=data.get("extras", {}),
        duration=data.get("duration", 0.0),
    )
    _expect(report.passed or report.failures, location,
            "failing report without a witness")
    return report
