import json

import pytest

from harness.ring_cli import main


def _run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_check_holds(capsys):
    code, out = _run(capsys, "check", "Z(6)", "commutative", "--json")
    assert code == 0
    assert json.loads(out)["verdict"] == "holds"


def test_check_fails_with_witness(capsys):
    code, out = _run(capsys, "check", "Triv(Z(4))", "linear-armendariz", "--json", "--witness")
    assert code == 1
    witness = json.loads(out)["witness"]
    assert witness["notes"]["product"] == [0, 2]
    assert witness["recheck_ok"] is True


def test_check_without_witness_flag_drops_recipe(capsys):
    code, out = _run(capsys, "check", "Mat(Z(2), 2)", "abelian", "--json")
    assert code == 1
    witness = json.loads(out)["witness"]
    assert "recheck" not in witness
    assert witness["elements"]["e"]["index"] == 1


def test_parse_error_exits_2(capsys):
    code, out = _run(capsys, "check", "Z(", "commutative", "--json")
    assert code == 2
    error = json.loads(out)
    assert error["error"] == "ParseError"
    assert (error["line"], error["column"]) == (1, 3)


def test_parameter_error_exits_2(capsys):
    code, out = _run(capsys, "check", "Tnk(Z(2), 3, 3)", "abelian", "--json")
    assert code == 2
    assert json.loads(out)["span"] == [0, 15]


def test_order_cap_exits_2(capsys):
    code, _ = _run(capsys, "eval", "Mat(Z(2), 3)", "--cap", "100")
    assert code == 2


def test_unknown_property_is_a_usage_error():
    with pytest.raises(SystemExit) as info:
        main(["check", "Z(2)", "noetherian"])
    assert info.value.code == 2


def test_budget_exhausted_exits_3(capsys):
    code, out = _run(capsys, "check", "Z(6)", "armendariz", "--budget", "1", "--json")
    assert code == 3
    assert json.loads(out)["verdict"] == "budget-exhausted"


def test_profile_reports_every_property(capsys):
    code, out = _run(capsys, "profile", "Z(4)", "--degree", "1", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["audit"]["consistent"] is True
    assert [r["property"] for r in data["profile"]][0] == "commutative"


def test_verify_paper_writes_report(capsys, tmp_path):
    out_path = tmp_path / "run.json"
    csv_path = tmp_path / "run.csv"
    code, out = _run(capsys, "verify-paper", "--filter", "iso-*", "--out", str(out_path), "--csv", str(csv_path))
    assert code == 0
    report = json.loads(out_path.read_text(encoding="utf-8"))
    assert report["pass"] is True
    assert len(report["cases"]) == 7
    assert csv_path.read_text(encoding="utf-8").startswith("id,ring,property")
    assert "7/7 cases pass" in out


def test_search_json(capsys):
    code, out = _run(capsys, "search", "--family", "polymod", "--base", "Z(2)", "--n", "1..3",
                     "--property", "reduced", "--polarity", "fails", "--json")
    assert code == 0
    results = json.loads(out)
    assert [r["hit"] for r in results] == [False, True, True]


def test_eval_describes_the_ring(capsys):
    code, out = _run(capsys, "eval", "Z(6)", "--json", "--show", "5")
    assert code == 0
    data = json.loads(out)
    assert data["idempotents"] == [0, 1, 3, 4]
    assert data["axioms"] == "ok"
    assert data["elements"] == {"5": 5}


def test_cache_flag_writes_lines(capsys, tmp_path):
    cache = tmp_path / "cache.jsonl"
    for _ in range(2):
        code, _ = _run(capsys, "check", "Z(4)", "reduced", "--cache", str(cache))
        assert code == 1
    assert len(cache.read_text(encoding="utf-8").splitlines()) == 1


@pytest.mark.parametrize("expr", ["Z(²)", "Z(٣)"])
def test_non_ascii_digits_are_parse_errors(capsys, expr):
    code, out = _run(capsys, "check", expr, "commutative", "--json")
    assert code == 2
    error = json.loads(out)
    assert error["error"] == "ParseError"
    assert (error["line"], error["column"]) == (1, 3)
    assert "integer" in error["expected"]


def test_huge_matrix_exits_2(capsys):
    code, out = _run(capsys, "eval", "Mat(Z(2), 100000)", "--json")
    assert code == 2
    assert json.loads(out)["error"] == "OrderOverflow"
