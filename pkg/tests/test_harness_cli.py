import json

import pytest

from flexion import (
    Bimould,
    CheckSpec,
    RatFun,
    UnknownCheckError,
    bm_equal,
    brown_lift,
    gen_random_bimould,
    run_check,
    run_many,
    vvar,
)
from flexion.cli import main
from flexion.harness import IDENTITY_CATALOG, check_names, describe_check
from flexion.jsonio import bimould_from_json, bimould_to_json

# Checks cheap enough to run inside the unit suite; the expensive ones are
# exercised once by the acceptance module.
CHEAP_CHECKS = [
    name
    for name in check_names()
    if name
    not in {
        "adari-dilator-threeway",
        "dilator-series-der-intertwine",
        "exp-ad-der-intertwine",
        "witt-bracket",
    }
]


def test_catalog_is_complete():
    assert len(IDENTITY_CATALOG) >= 45
    for name, (func, description, default_len, default_trials) in IDENTITY_CATALOG.items():
        assert callable(func), name
        assert description and isinstance(description, str), name
        assert default_len >= 1 and default_trials >= 1, name
        assert describe_check(name) == description


def test_unknown_check_raises():
    with pytest.raises(UnknownCheckError):
        run_check(CheckSpec(name="no-such-check"))
    with pytest.raises(UnknownCheckError):
        describe_check("no-such-check")


def test_reports_are_deterministic():
    a = run_check(CheckSpec(name="push-order", seed=5))
    b = run_check(CheckSpec(name="push-order", seed=5))
    assert a == b  # duration excluded from equality


def test_generator_contract():
    a = gen_random_bimould(3, 4, 2)
    assert a == gen_random_bimould(3, 4, 2)
    assert a.is_lu()
    assert gen_random_bimould(3, 4, 2, lu=False).component(0) is not None
    graded = gen_random_bimould(8, 3, 2, weight=1)
    for r, comp in graded.components.items():
        assert comp.is_homogeneous() == 1 - r
    const = gen_random_bimould(4, 0, 2, lu=False)
    assert set(const.components) <= {0}


@pytest.mark.parametrize("name", CHEAP_CHECKS)
def test_cheap_checks_pass(name):
    report = run_check(CheckSpec(name=name, seed=1))
    assert report.passed, [f.where for f in report.failures][:3]


def test_run_many_merges_by_name(monkeypatch):
    monkeypatch.setenv("FLEXION_THREADS", "2")
    specs = [CheckSpec(name="push-order"), CheckSpec(name="mu-associativity-unit")]
    reports = run_many(specs)
    assert set(reports) == {"push-order", "mu-associativity-unit"}
    assert all(r.passed for r in reports.values())


# -- command line ----------------------------------------------------------


def test_cli_verify_single(capsys):
    assert main(["verify", "push-order"]) == 0
    out = capsys.readouterr().out
    assert "PASS push-order" in out


def test_cli_verify_unknown(capsys):
    assert main(["verify", "nonsense"]) == 2


def test_cli_verify_json(capsys):
    assert main(["verify", "shuffle-product", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data[0]["name"] == "shuffle-product" and data[0]["pass"] is True


def test_cli_verify_list(capsys):
    assert main(["verify", "all", "--list"]) == 0
    out = capsys.readouterr().out
    assert "push-order:" in out


def test_cli_verify_literal_harmonic_fails(capsys):
    # the commutativity check must fail under the uncorrected contraction
    assert main(["verify", "harmonic-product", "--harmonic", "literal"]) == 1
    out = capsys.readouterr().out
    assert "FAIL" in out and "commutativity" in out


def test_cli_show(capsys):
    assert main(["show", "psi0", "--length", "2"]) == 0
    out = capsys.readouterr().out
    assert "r=1" in out and "r=2" in out
    assert main(["show", "pic", "--length", "3", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["truncation"] == 3
    assert main(["show", "s_d", "--length", "0"]) == 2


def test_cli_membership_and_lift(tmp_path, capsys):
    f = Bimould.single(1, RatFun.variable(vvar(1), 2), truncation=4, weight=3)
    fpath = tmp_path / "f.json"
    fpath.write_text(json.dumps(bimould_to_json(f)))

    assert main(["check-membership", "ls", "--input", str(fpath),
                 "--max-length", "4"]) == 0
    capsys.readouterr()

    odd = Bimould.single(1, RatFun.variable(vvar(1), 3), truncation=3)
    opath = tmp_path / "odd.json"
    opath.write_text(json.dumps(bimould_to_json(odd)))
    assert main(["check-membership", "ls", "--input", str(opath),
                 "--max-length", "3"]) == 1
    capsys.readouterr()

    out = tmp_path / "lift.json"
    assert main(["lift", "--input", str(fpath), "--target-length", "3",
                 "--output", str(out)]) == 0
    capsys.readouterr()
    lifted = bimould_from_json(json.loads(out.read_text()))
    assert bm_equal(lifted, brown_lift(f, 3))

    # lifted element is in ds and reversal-fixed
    assert main(["check-membership", "ds", "--input", str(out),
                 "--max-length", "3"]) == 0
    capsys.readouterr()
    assert main(["check-membership", "V", "--input", str(out),
                 "--max-length", "3"]) == 0
    capsys.readouterr()


def test_cli_schema_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"truncation": 1, "components": [{"length": 1, "value": '
                   '{"scalar": "1/0", "num": [], "den": []}}]}')
    assert main(["check-membership", "ls", "--input", str(bad),
                 "--max-length", "2"]) == 2
    assert "schema error" in capsys.readouterr().err
