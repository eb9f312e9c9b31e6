import json
import subprocess
import sys
from pathlib import Path

import pytest

from balancegraph.cli import main

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj) if not isinstance(obj, str) else obj)
    return str(path)


def test_check_graph_figure1(capsys):
    code, out, _ = run(capsys, "check-graph", "--input", str(DATA / "figure1_q.json"))
    assert code == 2
    assert out["status"] == "not_labelable" and out["certificate"]["family"] == "4A"


def test_label_graph_alias_single_edge(capsys):
    code, out, _ = run(capsys, "label-graph", "--input", str(DATA / "single_edge_q.json"))
    assert code == 0 and out["labeling"] == [["0", "1"], ["-5", "0"]]


def test_check_graph_exit_codes(capsys):
    assert run(capsys, "check-graph", "--input", str(DATA / "figure5_f3.json"))[0] == 2
    code, out, _ = run(capsys, "check-graph", "--input", str(DATA / "figure5_q.json"))
    assert code == 3 and out["status"] == "unknown"


def test_malformed_inputs(capsys, tmp_path):
    code, out, err = run(capsys, "check-graph", "--input", write(tmp_path, "t.json", '{"field": '))
    assert code == 1 and "invalid JSON" in err
    bad = {"field": {"type": "Q"}, "vertices": 3, "edges": [{"u": 3, "v": 1, "weight": "1"}]}
    assert run(capsys, "check-graph", "--input", write(tmp_path, "b.json", bad))[0] == 1
    comp = {"field": {"type": "Fp", "p": 4}, "vertices": 2, "edges": []}
    assert run(capsys, "check-graph", "--input", write(tmp_path, "c.json", comp))[0] == 1
    assert run(capsys, "check-graph", "--input", str(tmp_path / "missing.json"))[0] == 1
    with pytest.raises(SystemExit) as exc:
        main(["check-graph"])
    assert exc.value.code == 1


def test_detect_defects(capsys, tmp_path):
    code, out, _ = run(capsys, "detect-defects", "--input", str(DATA / "k4_ones_q.json"))
    assert code == 0 and [c["family"] for c in out["certificates"]] == ["4C"]
    assert run(capsys, "detect-defects", "--input", str(DATA / "figure5_f3.json"))[1]["certificates"] == []
    balanced = {
        "field": {"type": "Q"},
        "vertices": 4,
        "edges": [{"u": u, "v": v, "weight": w} for u, v, w in [(1, 2, "1"), (1, 3, "0"), (1, 4, "1"), (2, 3, "-1"), (3, 4, "1")]],
    }
    assert run(capsys, "detect-defects", "--input", write(tmp_path, "g.json", balanced))[1]["certificates"] == []


def test_check_lie(capsys, tmp_path):
    s = str(DATA / "lie_example_q.json")
    code, out, _ = run(capsys, "check-lie", "--structure", s, "--element", str(DATA / "element_x7_plus_x8.json"))
    assert code == 2 and out["certificate"]["family"] == "4A"
    code, out, _ = run(capsys, "check-lie", "--structure", s, "--element", str(DATA / "element_x5.json"))
    assert code == 0 and out["witness"] is not None
    outside = {"field": {"type": "Q"}, "generators": 2, "target_dim": 2, "brackets": [{"i": 1, "j": 2, "value": ["1", "0"]}]}
    code, _, err = run(capsys, "check-lie", "--structure", write(tmp_path, "s.json", outside),
                       "--element", write(tmp_path, "e.json", {"value": ["0", "1"]}))
    assert code == 1 and "outside the span" in err


def test_check_lie_dim3_always_yes(capsys, tmp_path):
    brackets = [
        {"i": 1, "j": 2, "value": ["1", "0", "0"]},
        {"i": 2, "j": 3, "value": ["0", "1", "0"]},
        {"i": 4, "j": 5, "value": ["0", "0", "1"]},
        {"i": 1, "j": 3, "value": ["0", "2", "0"]},
        {"i": 3, "j": 4, "value": ["0", "1", "0"]},
    ]
    s = write(tmp_path, "s.json", {"field": {"type": "Q"}, "generators": 5, "target_dim": 3, "brackets": brackets})
    for x in (["1", "1", "1"], ["3", "-2", "1/2"], ["0", "0", "1"]):
        code, out, _ = run(capsys, "check-lie", "--structure", s, "--element", write(tmp_path, "x.json", {"value": x}))
        assert code == 0 and out["status"] == "yes"


def test_check_group(capsys):
    g = str(DATA / "group_example_p3.json")
    code, out, _ = run(capsys, "check-group", "--group", g, "--target", str(DATA / "target_z3z4.json"))
    assert code == 2 and out["certificate"]["family"] == "4A"
    code, out, _ = run(capsys, "check-group", "--group", g, "--target", str(DATA / "target_z1.json"))
    assert code == 0 and set(out["witness"]) == {"alpha", "beta"}


def test_oracle_commands(capsys):
    code, out, _ = run(capsys, "oracle-graph", "--input", str(DATA / "figure5_f3.json"))
    assert code == 2 and out == {"labelable": False, "labeling": None}
    code, out, _ = run(capsys, "oracle-image", "--structure", str(DATA / "lie_example_f3.json"),
                       "--element", str(DATA / "element_x5.json"))
    assert code == 0 and out["in_image"]
    assert run(capsys, "oracle-graph", "--input", str(DATA / "figure1_q.json"))[0] == 1
    assert run(capsys, "oracle-graph", "--input", str(DATA / "figure5_f3.json"), "--budget", "10")[0] == 1


def test_verify_labeling(capsys, tmp_path):
    labels = write(tmp_path, "l.json", {"labels": [["0", "1"], ["-5", "0"]]})
    code, out, _ = run(capsys, "verify-labeling", "--input", str(DATA / "single_edge_q.json"), "--labels", labels)
    assert code == 0 and out["consistent"]
    labels = write(tmp_path, "m.json", {"labels": [["0", "1"], ["5", "0"]]})
    code, out, _ = run(capsys, "verify-labeling", "--input", str(DATA / "single_edge_q.json"), "--labels", labels)
    assert code == 2 and out["violations"][0]["lhs"] == "-5"


def test_verify_sweep(capsys):
    code, out, _ = run(capsys, "verify-sweep", "--n", "4", "--p", "2")
    assert code == 0 and out["graphs"] == 729 and out["disagree"] == 0
    code, out, _ = run(capsys, "verify-sweep", "--n", "5", "--p", "3", "--mode", "sample", "--samples", "300", "--seed", "4", "--workers", "2")
    assert code == 0 and out["graphs"] == 300 and out["unsound_certificates"] == 0
    assert run(capsys, "verify-sweep", "--n", "4", "--p", "5")[0] == 1


def test_output_is_deterministic(capsys):
    args = ["check-graph", "--input", str(DATA / "k4_plucker_q.json")]
    main(args)
    first = capsys.readouterr().out
    main(args)
    assert capsys.readouterr().out == first
    args = ["verify-sweep", "--n", "4", "--p", "2", "--mode", "sample", "--samples", "50", "--seed", "3"]
    main(args)
    first = capsys.readouterr().out
    main(args + ["--workers", "2"])
    assert capsys.readouterr().out == first


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "balancegraph", "check-graph", "--input", str(DATA / "k4_ones_q.json")],
        capture_output=True, text=True,
    )
    assert proc.returncode == 2
    assert json.loads(proc.stdout)["certificate"]["family"] == "4C"
