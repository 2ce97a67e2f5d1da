"""Command line behaviour: outputs, exit codes, determinism, formats."""

import json

import pytest

from barloop.cli import main
from barloop.exactlin import HomologyTable


def run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_homology_of_sphere2(capsys):
    code, r = run_json(capsys, ["homology", "sphere2", "--window", "0..4"])
    assert code == 0
    assert r["outputs"]["homology"] == {
        "0": "Z", "1": "0", "2": "Z", "3": "0", "4": "0 (partial)",
    }
    assert r["params"]["window"] == "0..4"
    assert r["tool"]["name"] == "barloop"


def test_homology_of_cyclic_nerve(capsys):
    code, r = run_json(capsys, ["homology", "z2", "--window", "0..5"])
    assert code == 0
    h = r["outputs"]["homology"]
    assert [h[str(n)] for n in range(5)] == ["Z", "Z/2", "0", "Z/2", "0"]


def test_homology_of_contractible_nerve(capsys):
    code, r = run_json(capsys, ["homology", "idempotent", "--window", "0..4"])
    assert code == 0
    h = r["outputs"]["homology"]
    assert h["0"] == "Z"
    assert all(h[str(n)] == "0" for n in range(1, 4))


def test_homology_table_round_trips(capsys):
    code, r = run_json(capsys, ["homology", "sphere3", "--window", "0..4"])
    table = HomologyTable.from_json_dict(r["outputs"]["table"])
    assert table.to_json_dict() == r["outputs"]["table"]
    assert table[3].group() == (1, ())


def test_bar_of_free_generator(capsys):
    code, r = run_json(capsys, ["bar", "free-t", "--window", "0..4"])
    assert code == 0
    assert r["outputs"]["ranks"] == {"0": 1, "1": 0, "2": 1, "3": 1, "4": 2}
    h = r["outputs"]["homology"]
    assert [h[str(n)] for n in range(4)] == ["Z", "0", "Z", "0"]


def test_cobar_of_sphere2(capsys):
    code, r = run_json(capsys, ["cobar", "sphere2", "--window", "0..5"])
    assert code == 0
    assert r["outputs"]["generators"] == [{"label": "e", "degree": 1}]
    h = r["outputs"]["homology"]
    assert [h[str(n)] for n in range(5)] == ["Z", "Z", "Z", "Z", "Z"]


def test_cobar_of_circle_skips_infinite_homology(capsys):
    code, r = run_json(capsys, ["cobar", "sphere1", "--window", "0..3"])
    assert code == 0
    assert r["outputs"]["homology"] is None
    assert "note" in r["outputs"]


def test_extended_cobar_of_circle(capsys):
    code, r = run_json(capsys, ["extended-cobar", "sphere1", "--window", "0..3"])
    assert code == 0
    assert r["outputs"]["localized_at"] == ["t + 1"]
    assert r["outputs"]["h0_complete"] is True
    # Laurent ring: irreducible words are all powers, not enumerable
    assert r["outputs"]["h0_basis"] is None


def test_extended_cobar_of_collapsed_boundary(capsys):
    code, r = run_json(
        capsys,
        ["extended-cobar", "boundary-delta3-collapsed", "--window", "0..3"],
    )
    assert code == 0
    assert r["outputs"]["h0_basis"] == ["1"]


def test_loopgroup_circle_level_zero(capsys):
    code, r = run_json(capsys, ["loopgroup", "sphere1", "--hi", "0"])
    assert code == 0
    assert r["outputs"]["ranks"] == {"0": 1}
    assert r["outputs"]["levels"][0]["generators"] == ["t"]


def test_pi1_of_projective_plane(capsys):
    code, r = run_json(capsys, ["pi1", "rp2"])
    assert code == 0
    assert r["outputs"]["completion"]["order"] == 2


def test_weq_exit_codes(capsys):
    code, r = run_json(capsys, ["weq", "z2", "trivial", "--window", "0..4"])
    assert code == 1
    assert r["outputs"]["verdict"]["verdict"] == "distinguished"
    assert r["outputs"]["verdict"]["witness"]["degree"] == 1

    code, r = run_json(capsys, ["weq", "idempotent", "trivial", "--window", "0..4"])
    assert code == 0
    assert r["outputs"]["verdict"]["verdict"] == "certified-equivalent"

    code, r = run_json(capsys, ["weq", "z3", "z3", "--window", "0..3"])
    assert code == 0


def test_weq_with_explicit_images(capsys):
    code, r = run_json(
        capsys,
        ["weq", "z2", "z2", "--images", "0,0", "--window", "0..4"],
    )
    assert code == 1
    assert r["outputs"]["verdict"]["verdict"] == "distinguished"


def test_invalid_input_exits_2(capsys):
    code, r = run_json(capsys, ["homology", "nosuch"])
    assert code == 2
    assert r["error"]["kind"] == "invalid-input"
    code, r = run_json(capsys, ["weq", "z2", "z3"])
    assert code == 2


def test_bad_window_exits_2(capsys):
    code, r = run_json(capsys, ["homology", "sphere2", "--window", "2..4"])
    assert code == 2
    assert r["error"]["kind"] == "invalid-input"


def test_paper_suite_all_cases_pass(capsys):
    code, r = run_json(capsys, ["paper-suite"])
    assert code == 0
    assert r["outputs"]["failed"] == 0
    assert {c["case"] for c in r["outputs"]["cases"]} == {
        "lemma31", "ex43", "ex46", "prop34", "loop-s2", "weq",
    }
    assert all(c["ok"] for c in r["outputs"]["cases"])


@pytest.mark.parametrize("case", ["lemma31", "ex43", "ex46", "prop34",
                                  "loop-s2", "weq"])
def test_paper_suite_single_cases(capsys, case):
    code, r = run_json(capsys, ["paper-suite", "--case", case])
    assert code == 0
    assert r["outputs"]["cases"] == [{"case": case, "ok": True}]


def test_reports_are_deterministic_modulo_timings(capsys):
    argv = ["paper-suite", "--case", "lemma31", "--seed", "7"]
    _, first = run_json(capsys, argv)
    _, second = run_json(capsys, argv)
    first.pop("timings")
    second.pop("timings")
    assert first == second


def test_seed_is_echoed_and_respected(capsys):
    ca, a = run_json(capsys, ["paper-suite", "--case", "lemma31", "--seed", "1"])
    cb, b = run_json(capsys, ["paper-suite", "--case", "lemma31", "--seed", "2"])
    assert (ca, cb) == (0, 0)
    assert a["params"]["seed"] == 1
    assert b["params"]["seed"] == 2


def test_global_flags_before_subcommand(capsys):
    code, r = run_json(capsys, ["--window", "0..4", "homology", "sphere2"])
    assert code == 0
    assert r["params"]["window"] == "0..4"
    assert "4" in r["outputs"]["homology"]


def test_out_file_and_csv(tmp_path, capsys):
    target = tmp_path / "report.csv"
    code = main([
        "homology", "sphere2", "--window", "0..3",
        "--format", "csv", "--out", str(target),
    ])
    assert code == 0
    assert capsys.readouterr().out == ""
    lines = target.read_text().splitlines()
    assert lines[0] == "key,value"
    assert any(line.startswith("command,homology") for line in lines)
    assert any("outputs.homology.2,Z" in line for line in lines)


def test_json_out_file_parses(tmp_path):
    target = tmp_path / "report.json"
    code = main(["pi1", "sphere1", "--out", str(target)])
    assert code == 0
    r = json.loads(target.read_text())
    assert r["outputs"]["presentation"]["gens"] == ["t"]
    assert r["outputs"]["completion"]["status"] == "completed"
