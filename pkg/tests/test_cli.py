import io
import json

import pytest

from weilk3.cli import FixtureSpec, gen_fixtures, main
from weilk3.errors import NoFixtureFound, NotPrime, OutOfRange
from weilk3.ratpoly import RatPoly
from weilk3.weil import WeilContext, analyze

FIXTURE = RatPoly.of(1, -2, 16) * RatPoly.of(1, -4) ** 21
FIXTURE_PAYLOAD = {"coeffs": FIXTURE.to_strings(), "p": 2, "q": 2, "m": 2}


def write_json(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def run(capsys, argv):
    rc = main(argv)
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def test_analyze_fixture(tmp_path, capsys):
    path = write_json(tmp_path, "f.json", FIXTURE_PAYLOAD)
    rc, out, err = run(capsys, ["analyze", path])
    assert rc == 0 and err == ""
    rep = json.loads(out)
    assert rep["a"] == 21
    assert rep["k3_type"] is True
    assert rep["ptr"] == ["1", "-1/2", "1"]
    assert rep["independence"] == "theorem-derived"


def test_analyze_stdin_and_determinism(tmp_path, capsys, monkeypatch):
    path = write_json(tmp_path, "f.json", FIXTURE_PAYLOAD)
    rc1, out1, _ = run(capsys, ["analyze", path])
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(FIXTURE_PAYLOAD)))
    rc2, out2, _ = run(capsys, ["analyze", "-"])
    assert rc1 == rc2 == 0
    assert out1 == out2


def test_analyze_constant_polynomial(tmp_path, capsys):
    path = write_json(tmp_path, "c.json", {"coeffs": ["1"], "p": 2, "q": 2, "m": 2})
    rc, out, _ = run(capsys, ["analyze", path])
    assert rc == 0
    rep = json.loads(out)
    assert rep["a"] == 0 and rep["k3_type"] is False


def test_analyze_negative_verdict_still_exits_zero(tmp_path, capsys):
    path = write_json(tmp_path, "n.json", {"coeffs": ["1", "-2"], "p": 2, "q": 2, "m": 2})
    rc, out, _ = run(capsys, ["analyze", path])
    assert rc == 0
    assert json.loads(out)["q_admissible"] is False


def test_analyze_schema_error(tmp_path, capsys):
    path = write_json(tmp_path, "bad.json", {"coeffs": ["1", 2.5], "p": 2, "q": 2, "m": 2})
    rc, out, err = run(capsys, ["analyze", path])
    assert rc == 2 and out == ""
    payload = json.loads(err)
    assert payload["error"] == "schema" and payload["pointer"] == "/coeffs/1"


def test_analyze_invalid_json(tmp_path, capsys):
    path = tmp_path / "junk.json"
    path.write_text("{not json")
    rc, _, err = run(capsys, ["analyze", str(path)])
    assert rc == 2
    assert json.loads(err)["error"] == "schema"


def test_tate_dim_from_structure(tmp_path, capsys):
    path = write_json(tmp_path, "st.json", {"a": 21, "k": 1})
    rc, out, _ = run(capsys, ["tate-dim", path, "--r", "2", "--m", "4"])
    assert rc == 0
    res = json.loads(out)
    assert res["tate_dim"] == 447
    assert [row["contribution"] for row in res["per_chunk"]] == [2, 2, 443]


def test_tate_dim_from_report(tmp_path, capsys):
    rep = analyze(FIXTURE, WeilContext(2, 2, 2)).to_json_dict()
    path = write_json(tmp_path, "rep.json", rep)
    rc, out, _ = run(capsys, ["tate-dim", path, "--r", "2", "--m", "4"])
    assert rc == 0
    assert json.loads(out)["tate_dim"] == 447


def test_verify_span(capsys):
    rc, out, _ = run(capsys, ["verify-span", "--a", "21", "--k", "1", "--J", "2"])
    assert rc == 0
    res = json.loads(out)
    assert res["rank"] == res["dimension"] == 443
    assert res["generates"] is True


def test_verify_span_j_too_small(capsys):
    rc, _, err = run(capsys, ["verify-span", "--a", "0", "--k", "1", "--J", "1"])
    assert rc == 2
    assert json.loads(err)["error"] == "input"


def test_decompose_check(tmp_path, capsys):
    path = write_json(tmp_path, "st.json", {"a": 1, "k": 1})
    rc, out, _ = run(capsys, ["decompose-check", path, "--r", "3", "--m", "6"])
    assert rc == 0
    res = json.loads(out)
    assert res["decomposable"] is True and res["structure"] == {"a": 1, "k": 1}


def test_decompose_check_guard(tmp_path, capsys):
    path = write_json(tmp_path, "st.json", {"a": 1, "k": 1})
    rc, _, err = run(capsys, ["decompose-check", path, "--r", "5", "--m", "2"])
    assert rc == 4
    assert json.loads(err)["error"] == "guard"


def test_gen_fixtures_cli_default(capsys):
    rc1, out1, _ = run(capsys, ["gen-fixtures"])
    assert rc1 == 0
    fixtures = json.loads(out1)
    assert len(fixtures) == 1
    assert fixtures[0] == FIXTURE_PAYLOAD
    # byte-stable across runs
    rc2, out2, _ = run(capsys, ["gen-fixtures"])
    assert (rc2, out2) == (rc1, out1)


def test_gen_fixtures_cli_overrides(tmp_path, capsys):
    rc, out, _ = run(capsys, ["gen-fixtures", "--p", "3", "--count", "2"])
    assert rc == 0
    fixtures = json.loads(out)
    assert len(fixtures) == 2 and all(f["p"] == 3 for f in fixtures)
    spec_path = write_json(tmp_path, "spec.json", {"count": 3})
    rc, out, _ = run(capsys, ["gen-fixtures", spec_path])
    assert rc == 0 and len(json.loads(out)) == 3


def test_gen_fixtures_cli_exhausted(capsys):
    rc, _, err = run(capsys, ["gen-fixtures", "--coefficient-bound", "0"])
    assert rc == 4
    assert json.loads(err)["error"] == "guard"


def test_gen_fixtures_cli_bad_spec(tmp_path, capsys):
    path = write_json(tmp_path, "spec.json", {"widgets": 3})
    rc, _, err = run(capsys, ["gen-fixtures", path])
    assert rc == 2
    assert json.loads(err)["pointer"] == "/widgets"


def test_gen_fixtures_api():
    fixtures = gen_fixtures(FixtureSpec())
    assert fixtures == [FIXTURE_PAYLOAD]
    degrees = (2,) * 9 + (1,) * 3
    mixed = gen_fixtures(FixtureSpec(middle_factor_degrees=degrees))
    coeffs = [int(c) for c in mixed[0]["coeffs"]]
    assert len(coeffs) == 24 and coeffs[0] == 1
    with pytest.raises(NotPrime):
        gen_fixtures(FixtureSpec(p=6))
    with pytest.raises(OutOfRange):
        gen_fixtures(FixtureSpec(middle_factor_degrees=(1,) * 20))
    with pytest.raises(NoFixtureFound):
        gen_fixtures(FixtureSpec(coefficient_bound=0))


def test_verify_all_pass(tmp_path, capsys):
    rep = analyze(FIXTURE, WeilContext(2, 2, 2)).to_json_dict()
    path = write_json(tmp_path, "rep.json", rep)
    rc, out, _ = run(capsys, ["verify", path, "--J", "2"])
    assert rc == 0
    res = json.loads(out)
    assert res["all_pass"] is True
    assert res["structure"] == {"a": 21, "k": 1}
    names = [c["name"] for c in res["checks"]]
    assert names == [
        "generation_vv",
        "pair_decomposition",
        "square_tate_dim",
        "decomposable",
    ]
    decomp = res["checks"][-1]
    assert decomp["status"] == "skipped"  # a = 21 exceeds the exact-model cap


def test_verify_rejects_non_semistable(tmp_path, capsys):
    rep = analyze(RatPoly.of(1, -4, 16), WeilContext(2, 2, 2)).to_json_dict()
    path = write_json(tmp_path, "rep.json", rep)
    rc, _, err = run(capsys, ["verify", path])
    assert rc == 3
    payload = json.loads(err)
    assert payload["error"] == "hypotheses-not-met"
    assert "semistable" in payload["failed"]


def test_verify_with_base_change(tmp_path, capsys):
    rep = analyze(RatPoly.of(1, -4, 16), WeilContext(2, 2, 2)).to_json_dict()
    path = write_json(tmp_path, "rep.json", rep)
    rc, out, _ = run(capsys, ["verify", path, "--use-base-change"])
    assert rc == 0
    res = json.loads(out)
    assert res["structure"] == {"a": 2, "k": 0}
    assert res["all_pass"] is True
    decomp = res["checks"][-1]
    assert decomp["status"] == "checked"
    assert [c["r"] for c in decomp["cases"]] == [2, 3, 4]
