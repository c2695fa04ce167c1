import json

import pytest

from permrat.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, [json.loads(line) for line in out.splitlines() if line]


def test_classify_command(capsys):
    code, recs = run(capsys, "classify", "--q", "7", "--f", "x^4+3*x")
    assert code == 0
    assert recs[0]["family"]["kind"] == "table1"
    assert recs[0]["exceptional"] is False


def test_count_command(capsys):
    code, recs = run(capsys, "count", "--q", "5")
    assert code == 0
    r = recs[0]
    assert r["formula"] == r["assembled"] == r["bruteforce"] == 24000
    assert r["consistent"]


def test_monodromy_empty_at_6(capsys):
    code, recs = run(capsys, "monodromy", "--n", "6", "--primitive")
    assert code == 0 and recs == []


def test_monodromy_n4(capsys):
    code, recs = run(capsys, "monodromy", "--n", "4")
    assert code == 0 and len(recs) == 1
    assert recs[0]["A_order"] == 12 and recs[0]["G_order"] == 4


def test_search_command(capsys):
    code, recs = run(capsys, "search", "--n", "4", "--q", "7")
    assert code == 0 and len(recs) == 2
    assert {r["exceptional"] for r in recs} == {True, False}
    assert all(r["stabilizer_size"] == 3 for r in recs)


def test_exceptional_command(capsys):
    code, recs = run(capsys, "exceptional", "--q", "7", "--f", "x^4+3*x")
    assert code == 0
    assert recs[0]["verdict"] == "not_exceptional"
    code, recs = run(capsys, "exceptional", "--q", "2", "--f", "x^2")
    assert recs[0]["verdict"] == "exceptional"
    assert "certificate_level" in recs[0]


def test_stabilizer_command(capsys):
    code, recs = run(capsys, "stabilizer", "--q", "7", "--f", "x^4+3*x")
    assert code == 0
    assert recs[0]["size"] == 3 and len(recs[0]["pairs"]) == 3


def test_family_commands(capsys):
    code, recs = run(capsys, "family", "redei", "--q", "7", "--n", "3")
    assert code == 0 and recs[0]["permutes_p1"] and recs[0]["exceptional"]
    code, recs = run(capsys, "family", "quartic", "--q", "5",
                     "--alpha", "1", "--beta", "1")
    assert code == 0
    assert recs[0]["family"] == "quartic" and "symmetry_mu" in recs[0]
    assert recs[1]["exceptional"]
    code, recs = run(capsys, "family", "table1", "--q", "3")
    assert code == 0 and len(recs) == 3
    assert all(not r["exceptional"] for r in recs)


def test_field_spec_variants(capsys):
    code, recs = run(capsys, "classify", "--p", "3", "--k", "2",
                     "--f", "x^3+2*w*x")
    assert code == 0
    code2, recs2 = run(capsys, "classify", "--q", "9", "--mod", "x^2+1",
                       "--f", "x^3+2*w*x")
    assert code2 == 0


def test_unknown_flag_exits_2(capsys):
    with pytest.raises(SystemExit) as e:
        main(["count", "--q", "5", "--bogus"])
    assert e.value.code == 2
    capsys.readouterr()


def test_budget_exit_3(capsys):
    code = main(["search", "--n", "4", "--q", "29"])
    capsys.readouterr()
    assert code == 3


def test_parse_error_exit_2(capsys):
    code = main(["classify", "--q", "7", "--f", "x^4 + $"])
    capsys.readouterr()
    assert code == 2


def test_missing_arguments_exit_2(capsys):
    assert main(["classify", "--f", "x^2"]) == 2         # no field given
    assert main(["family", "quartic", "--q", "5"]) == 2  # no alpha/beta
    assert main(["family", "additive", "--q", "2"]) == 2
    capsys.readouterr()


def test_output_deterministic(capsys):
    code1, recs1 = run(capsys, "search", "--n", "3", "--q", "5")
    code2, recs2 = run(capsys, "search", "--n", "3", "--q", "5")
    assert recs1 == recs2 and code1 == code2 == 0
