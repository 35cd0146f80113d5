import json
from fractions import Fraction

import pytest

from koszul.cli import main
from koszul.fixtures import FixtureError, load_fixture, parse_coeff, resolve_fixture


def test_parse_coeff():
    assert parse_coeff("3/2") == Fraction(3, 2)
    assert parse_coeff("-4") == Fraction(-4)
    assert parse_coeff(7) == Fraction(7)
    with pytest.raises(FixtureError):
        parse_coeff("1.5")
    with pytest.raises(FixtureError):
        parse_coeff(1.5)
    with pytest.raises(FixtureError):
        parse_coeff("3/0")


def test_load_fixture_schema_errors():
    with pytest.raises(FixtureError):
        load_fixture({"generators": []})
    with pytest.raises(FixtureError):
        load_fixture({"generators": [{"name": "x", "degree": 0}],
                      "differential": [{"from": "x", "to": "x", "coeff": "1"}]})
    with pytest.raises(FixtureError):
        load_fixture({"generators": [{"name": "x", "degree": 0}],
                      "brackets": [{"arity": 2, "inputs": ["x", "x"],
                                    "output": [{"coeff": "1", "monomial": ["x"]}]}]})


def test_resolve_builtin():
    space, linf = resolve_fixture("sl2")
    assert space.gen_names == ["e", "f", "h"]
    assert linf.is_dg_lie()


def test_resolve_fixture_file(tmp_path):
    path = tmp_path / "tiny.json"
    path.write_text(json.dumps({
        "generators": [{"name": "x", "degree": 0}, {"name": "y", "degree": 1}],
        "differential": [{"from": "x", "to": "y", "coeff": "1/1"}],
    }))
    space, linf = resolve_fixture(str(path))
    assert space.differential == {"x": {"y": Fraction(1)}}


def test_verify_pass(tmp_path):
    out = tmp_path / "report.json"
    code = main(["verify", "bar", "qx", "--weight", "3", "--out", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["pass"] is True
    assert report["suites"]["bar"]["pass"] is True


def test_verify_vacuous_zero_dimensional(tmp_path):
    fixture = tmp_path / "empty-ish.json"
    # smallest valid space: a single generator but weight bound 0 checks nothing
    fixture.write_text(json.dumps({"generators": [{"name": "x", "degree": 0}]}))
    out = tmp_path / "report.json"
    code = main(["verify", "all", str(fixture), "--weight", "1",
                 "--out", str(out)])
    assert code == 0


def test_verify_rejects_malformed_coefficient(tmp_path):
    fixture = tmp_path / "bad.json"
    fixture.write_text(json.dumps({
        "generators": [{"name": "x", "degree": 0}],
        "differential": [{"from": "x", "to": "x", "coeff": "1.5"}],
    }))
    code = main(["verify", "bar", str(fixture), "--weight", "2"])
    assert code == 2


def test_verify_rejects_unknown_fixture():
    assert main(["verify", "bar", "no-such-fixture", "--weight", "2"]) == 2


def test_identity_failure_exit_code(tmp_path):
    # a bracket that is not a chain map: the deformed differential fails to
    # square to zero already at weight two
    fixture = tmp_path / "bad_lie.json"
    fixture.write_text(json.dumps({
        "generators": [{"name": "a", "degree": 0}, {"name": "b", "degree": 0},
                       {"name": "c", "degree": 1}],
        "differential": [{"from": "a", "to": "c", "coeff": "1"}],
        "brackets": [
            {"arity": 2, "inputs": ["a", "b"],
             "output": [{"coeff": "1", "monomial": ["a"]}]},
        ],
    }))
    out = tmp_path / "report.json"
    code = main(["verify", "gm", str(fixture), "--weight", "2",
                 "--u-trunc", "1", "--out", str(out)])
    assert code == 1
    report = json.loads(out.read_text())
    failed = [e for e in report["suites"]["gm"]["identities"]
              if not e["residual_is_zero"] and not e.get("informational")]
    assert failed and failed[0]["counterexample"]


def test_pbw_l3_skips_iso(tmp_path):
    out = tmp_path / "report.json"
    code = main(["pbw", "l3", "--weight", "3", "--out", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["pbw_isomorphism"] == {"skipped": "not dg Lie"}
    assert "3" in report["structure_maps"]


def test_pbw_abelian(tmp_path):
    out = tmp_path / "report.json"
    code = main(["pbw", "abelian2", "--weight", "3", "--out", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    # the binary table is the plain symmetric product
    twos = report["structure_maps"]["2"]
    for entry in twos:
        if entry["inputs"] == [["p"], ["q"]]:
            assert entry["output"] == [{"monomial": ["p", "q"], "coeff": "1"}]


def test_gm_reports(tmp_path):
    out = tmp_path / "report.json"
    code = main(["gm", "abelian2", "--weight", "2", "--u-trunc", "1",
                 "--out", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["mc_residual_zero"] is True
    nr = report["normalization_report"]
    assert nr["spectral_holds"] is True and nr["p_eps_holds"] is False


def test_reports_are_deterministic(tmp_path):
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    argv = ["verify", "cobar", "v2d", "--weight", "3", "--seed", "7"]
    assert main(argv + ["--out", str(out1)]) == 0
    assert main(argv + ["--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
