import pytest

from flexion import (
    Bimould,
    CheckReport,
    Failure,
    Q,
    RatFun,
    gen_random_bimould,
    harmonic_expand,
    is_ds,
    psi0,
    uvar,
    vvar,
)
from flexion.jsonio import (
    SchemaError,
    bimould_from_json,
    bimould_to_json,
    ratfun_from_json,
    ratfun_to_json,
    report_from_json,
    report_to_json,
    seqsum_from_json,
    seqsum_to_json,
)

inv = RatFun.inv_linform


def test_ratfun_roundtrip_value_and_text():
    f = RatFun.variable(vvar(2)).scale(Q(-3, 2)) * inv({vvar(1): 1}) * inv(
        {vvar(2): 1, vvar(1): -1}, 2
    )
    data = ratfun_to_json(f)
    assert ratfun_from_json(data) == f
    assert ratfun_to_json(ratfun_from_json(data)) == data


def test_ratfun_zero_encoding():
    data = ratfun_to_json(RatFun.zero())
    assert data == {"scalar": "0", "num": [], "den": []}
    assert ratfun_from_json(data).is_zero()


def test_ratfun_noncanonical_input_is_normalised():
    # non-canonical orientation and a cancelling factor
    data = {
        "scalar": "1",
        "num": [{"c": "1", "e": {"v2": 1}}, {"c": "-1", "e": {"v1": 1}}],
        "den": [{"f": {"v2": 1, "v1": -1}, "m": 1}, {"f": {"v1": 1}, "m": 1}],
    }
    assert ratfun_from_json(data) == inv({vvar(1): 1})


def test_ratfun_schema_errors():
    with pytest.raises(SchemaError):
        ratfun_from_json({"scalar": "1/0", "num": [], "den": []})
    with pytest.raises(SchemaError):
        ratfun_from_json({"scalar": "1", "num": [{"c": "1", "e": {"w1": 1}}], "den": []})
    with pytest.raises(SchemaError):
        ratfun_from_json({"scalar": "1", "num": [], "den": [{"f": {}, "m": 1}]})
    with pytest.raises(SchemaError):
        ratfun_from_json({"scalar": "1", "num": [], "den": [{"f": {"v1": 1}, "m": 0}]})
    with pytest.raises(SchemaError) as err:
        ratfun_from_json(
            {"scalar": "1", "num": [{"c": "1", "e": {"v1": -1}}], "den": []}
        )
    assert "e.v1" in str(err.value)


def test_bimould_roundtrip():
    p = psi0(3)
    data = bimould_to_json(p)
    assert data["layer"] == "u-const"
    assert data["weight"] == 0
    back = bimould_from_json(data)
    assert back == p and back.weight == 0
    assert bimould_to_json(back) == data
    rand = gen_random_bimould(3, 3, 2, lu=False)
    assert bimould_from_json(bimould_to_json(rand)) == rand


def test_bimould_schema_validation():
    with pytest.raises(SchemaError):
        bimould_from_json({"truncation": -1, "components": []})
    # out-of-range variable for the declared length
    bad = {
        "truncation": 2,
        "components": [
            {"length": 1, "value": {"scalar": "1", "num": [{"c": "1", "e": {"v2": 1}}], "den": []}}
        ],
    }
    with pytest.raises(SchemaError):
        bimould_from_json(bad)
    # layer claim contradicting the content
    claimed = {
        "truncation": 1,
        "layer": "u-const",
        "weight": None,
        "components": [
            {"length": 1, "value": {"scalar": "1", "num": [{"c": "1", "e": {"u1": 1}}], "den": []}}
        ],
    }
    with pytest.raises(SchemaError):
        bimould_from_json(claimed)
    # duplicate lengths
    dup = {
        "truncation": 1,
        "components": [
            {"length": 1, "value": {"scalar": "1", "num": [{"c": "1", "e": {"v1": 1}}], "den": []}},
            {"length": 1, "value": {"scalar": "2", "num": [{"c": "1", "e": {}}], "den": []}},
        ],
    }
    with pytest.raises(SchemaError):
        bimould_from_json(dup)


def test_seqsum_roundtrip():
    s = harmonic_expand((1,), (2,))
    data = seqsum_to_json(s)
    assert seqsum_from_json(data) == s
    assert seqsum_to_json(seqsum_from_json(data)) == data


def test_report_roundtrip():
    report = is_ds(psi0(2), 2)
    data = report_to_json(report)
    assert report_from_json(data) == report
    failing = CheckReport("demo", {"max_length": 2}, passed=False,
                          failures=[Failure("somewhere", inv({vvar(1): 1}))])
    back = report_from_json(report_to_json(failing))
    assert back == failing
    with pytest.raises(SchemaError):
        report_from_json({"name": "demo", "pass": False, "failures": []})
