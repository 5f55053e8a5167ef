import json
import os

import pytest

from rectpart.cli import main


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_ink_on_named_shape(capsys):
    code, payload = _run(capsys, ["ink", "--shape", "lshape"])
    assert code == 0
    assert payload["value"] == {"num": 1, "den": 1}
    assert payload["count"] == 2
    assert payload["cuts"] == [[[0, 1], [1, 1]]]
    assert "triplets" in payload["stats"]


def test_thick_vertex(capsys):
    code, payload = _run(capsys, ["thick", "--shape", "lshape"])
    assert code == 0
    assert payload["objective"] == "thick"
    assert payload["value"] == {"num": 1, "den": 1}


def test_assert_flag_stays_in_the_run(capsys, monkeypatch):
    monkeypatch.delenv("RECTPART_ASSERT", raising=False)
    code, payload = _run(capsys, ["--assert", "ink", "--shape", "cross"])
    assert code == 0
    assert payload["count"] >= 1
    assert "RECTPART_ASSERT" not in os.environ


def test_unreadable_polygon(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("not json")
    assert main(["ink", str(bad)]) == 2


def test_invalid_polygon_lists_errors(tmp_path, capsys):
    bad = tmp_path / "diag.json"
    bad.write_text(json.dumps({"outer": [[0, 0], [2, 0], [2, 2], [1, 3], [0, 2]]}))
    assert main(["ink", str(bad)]) == 2
    assert "rectilinear" in capsys.readouterr().err


def test_unknown_shape(capsys):
    assert main(["ink", "--shape", "hexagon"]) == 2


def test_verify_round_trip(tmp_path, capsys):
    out = tmp_path / "lshape.json"
    assert main(["ink", "--shape", "lshape", "--json", str(out)]) == 0
    capsys.readouterr()
    code, payload = _run(capsys, ["verify", str(out), "--shape", "lshape", "--incidence", "vertex"])
    assert code == 0
    assert payload["ok"]
    assert payload["ink"] == {"num": 1, "den": 1}


def test_verify_failure_exit_code(tmp_path, capsys):
    part = tmp_path / "wrong.json"
    part.write_text(json.dumps({"value": {"num": 0, "den": 1}, "rectangles": [[0, 0, 2, 1]]}))
    code, payload = _run(capsys, ["verify", str(part), "--shape", "lshape"])
    assert code == 1
    assert not payload["ok"]


def test_oracle_commands(capsys):
    code, payload = _run(capsys, ["oracle", "ink", "--shape", "cross"])
    assert (code, payload["value"]) == (0, {"num": 2, "den": 1})
    code, payload = _run(capsys, ["oracle", "th", "--shape", "windmill", "--delta", "2", "--k", "4"])
    assert code == 0 and payload["answer"] is True
    code, payload = _run(capsys, ["oracle", "thick", "--shape", "lshape"])
    assert payload["width"] == {"num": 1, "den": 1} and payload["count"] == 2


def test_oracle_size_limit(capsys):
    assert main(["oracle", "ink", "--shape", "cross", "--limit", "3"]) == 3


def test_oracle_th_needs_thresholds(capsys):
    assert main(["oracle", "th", "--shape", "windmill"]) == 2


def test_standalone_gadget(capsys, tmp_path):
    out = tmp_path / "inverter.json"
    code, payload = _run(capsys, ["gadget", "--kind", "inverter", "--out", str(out)])
    assert code == 0
    assert payload["k"] == 6
    assert payload["holes"] == 2
    assert payload["tiles"] == 3
    assert json.loads(out.read_text())["outer"] == [[0, 0], [15, 0], [15, 5], [0, 5]]


def test_gadget_from_formula_with_witness(tmp_path, capsys):
    cnf = tmp_path / "one.cnf"
    cnf.write_text("p cnf 3 1\n1 2 3 0\n")
    svg = tmp_path / "one.svg"
    code, payload = _run(capsys, ["gadget", str(cnf), "--witness", "1", "--svg", str(svg)])
    assert code == 0
    assert payload["witness"]["count"] == payload["k"]
    assert svg.read_text().startswith("<svg")


@pytest.mark.parametrize("argv", [["--witness=-1,2,-3"], ["--witness", "-1,2,-3"]])
def test_witness_with_leading_negative_literal(tmp_path, capsys, argv):
    cnf = tmp_path / "neg.cnf"
    cnf.write_text("p cnf 3 1\n-1 -2 -3 0\n")
    code, payload = _run(capsys, ["gadget", str(cnf)] + argv)
    assert code == 0
    assert payload["witness"]["count"] == payload["k"]


def test_witness_from_file(tmp_path, capsys):
    cnf = tmp_path / "two.cnf"
    cnf.write_text("p cnf 4 2\n1 -2 3 0\n-1 2 4 0\n")
    lits = tmp_path / "witness.txt"
    lits.write_text("-1 -2 3 4\n")
    code, payload = _run(capsys, ["gadget", str(cnf), "--witness", str(lits)])
    assert code == 0
    assert payload["witness"]["count"] == payload["k"]


def test_signs_change_the_instance(tmp_path, capsys):
    payloads = []
    for name, clause in (("pos", "1 2 3"), ("neg", "-1 -2 -3")):
        cnf = tmp_path / f"{name}.cnf"
        cnf.write_text(f"p cnf 3 1\n{clause} 0\n")
        code, payload = _run(capsys, ["gadget", str(cnf)])
        assert code == 0
        payloads.append(payload)
    assert payloads[0]["polygon"] != payloads[1]["polygon"]


def test_gadget_errors(tmp_path, capsys):
    k33 = tmp_path / "k33.cnf"
    k33.write_text("p cnf 3 3\n1 2 3 0\n-1 2 3 0\n1 -2 3 0\n")
    assert main(["gadget", str(k33)]) == 2
    big = tmp_path / "big.cnf"
    big.write_text("p cnf 9 3\n1 2 3 0\n4 5 6 0\n7 8 9 0\n")
    assert main(["gadget", str(big)]) == 3
    one = tmp_path / "one.cnf"
    one.write_text("p cnf 3 1\n1 2 3 0\n")
    assert main(["gadget", str(one), "--witness", "-1,-2,-3"]) == 2


def test_approx_holes(capsys):
    code, payload = _run(capsys, ["approx-holes", "--shape", "pointholes"])
    assert code == 0
    assert payload["objective"] == "ink"


def test_approx_holes_needs_rectangle(capsys):
    assert main(["approx-holes", "--shape", "lshape"]) == 2


def test_render(tmp_path, capsys):
    part = tmp_path / "l.json"
    assert main(["ink", "--shape", "lshape", "--json", str(part)]) == 0
    svg = tmp_path / "l.svg"
    assert main(["render", "--shape", "lshape", "--partition", str(part), "--svg", str(svg)]) == 0
    assert svg.read_text().count('class="cut"') == 1


def test_corpus(capsys):
    code, payload = _run(capsys, ["corpus", "--count", "2", "--cells", "4", "--board", "3"])
    assert code == 0
    assert payload["total"] == 2
    assert payload["agree"] == 2


def test_missing_command():
    with pytest.raises(SystemExit):
        main([])
