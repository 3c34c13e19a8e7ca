import json
import subprocess
import sys

import numpy as np
import pytest

from golden_cases import CASES, NETLISTS, golden_path
from kirchhoff.cli import main


@pytest.fixture
def in_corpus(monkeypatch):
    monkeypatch.chdir(NETLISTS)


def run(capsys, argv):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden_transcript(name, in_corpus, capsys):
    expected = json.loads(golden_path(name).read_text(encoding="utf-8"))
    code, out, err = run(capsys, CASES[name])
    assert (code, out, err) == (expected["exit"], expected["stdout"], expected["stderr"])


def test_every_subcommand_has_a_golden_case():
    covered = {argv[0] if argv[0] not in ("inverse", "phasor") else " ".join(argv[:2]) for argv in CASES.values()}
    assert covered >= {
        "validate", "laplacian", "reduce", "resistance", "solve", "powerflow",
        "inverse check", "inverse fit", "phasor reduce", "phasor solve",
    }


def test_corpus_has_six_netlists():
    netlists = [p for p in NETLISTS.glob("*.json") if not p.stem.endswith("_target")]
    assert len(netlists) == 6


@pytest.mark.parametrize(
    "argv",
    [
        ["powerflow", "star.json", "--seed", "5"],
        ["inverse", "check", "cycle4.json", "--seed", "11"],
        ["phasor", "solve", "rc_divider.json"],
    ],
)
def test_reruns_are_byte_identical(argv):
    def once():
        return subprocess.run(
            [sys.executable, "-m", "kirchhoff", *argv], cwd=NETLISTS, capture_output=True, check=True
        ).stdout

    assert once() == once()


def test_different_seed_changes_random_probes(in_corpus, capsys):
    _, a, _ = run(capsys, ["inverse", "check", "cycle4.json", "--seed", "1"])
    _, b, _ = run(capsys, ["inverse", "check", "cycle4.json", "--seed", "2"])
    assert a != b


def test_resistance_of_series_pair(in_corpus, capsys):
    code, out, _ = run(capsys, ["resistance", "path3.json", "--between", "1,3"])
    assert code == 0
    assert json.loads(out)["resistance"] == pytest.approx(2.0, abs=1e-12)


def test_reduce_series_pair(in_corpus, capsys):
    _, out, _ = run(capsys, ["reduce", "path3.json"])
    doc = json.loads(out)
    np.testing.assert_allclose(doc["laplacian"], [[0.5, -0.5], [-0.5, 0.5]], rtol=0, atol=1e-12)
    assert [(e["tail"], e["head"]) for e in doc["edges"]] == [("1", "3")]


def test_validate_self_loop_names_edge(in_corpus, capsys):
    code, out, _ = run(capsys, ["validate", "selfloop.json"])
    assert code == 1
    report = json.loads(out)
    assert report["valid"] is False
    assert report["errors"][0]["edge"] == "loop"


def test_csv_and_json_agree_to_printed_precision(in_corpus, capsys):
    _, js, _ = run(capsys, ["laplacian", "cycle4.json"])
    _, csv, _ = run(capsys, ["laplacian", "cycle4.json", "--format", "csv"])
    rows = [line.split(",")[1:] for line in csv.strip().splitlines()[1:]]
    assert [[float(v) for v in r] for r in rows] == json.loads(js)["laplacian"]


def test_fit_recovers_cycle_conductances(in_corpus, capsys):
    _, out, _ = run(capsys, ["inverse", "fit", "cycle4.json", "--target", "cycle4_target.json"])
    g = json.loads(out)["g"]
    assert [g[k] for k in ("ab", "bc", "cd", "da")] == pytest.approx([1, 2, 3, 4], rel=1e-6)


def test_phasor_without_frequency_is_input_error(tmp_path, capsys):
    doc = json.loads((NETLISTS / "rc_divider.json").read_text())
    del doc["frequency"]
    path = tmp_path / "rc.json"
    path.write_text(json.dumps(doc))
    code, out, err = run(capsys, ["phasor", "solve", str(path)])
    assert code == 1 and out == ""
    assert json.loads(err)["error"] == "MissingFrequency"


def test_resonance_is_numerical_failure(in_corpus, capsys):
    code, _, err = run(capsys, ["phasor", "solve", "lc_resonant.json"])
    assert code == 2
    assert json.loads(err)["error"] == "ResonantInterior"


def test_singular_interior_exit_code(tmp_path, capsys):
    # internal node with no edges: L_CC has a zero row
    doc = {
        "nodes": [{"id": "1", "kind": "boundary"}, {"id": "2", "kind": "boundary"}, {"id": "x", "kind": "internal"}],
        "edges": [{"id": "e", "tail": "1", "head": "2", "element": {"type": "resistor", "value": 1}}],
    }
    path = tmp_path / "iso.json"
    path.write_text(json.dumps(doc))
    code, _, err = run(capsys, ["reduce", str(path)])
    assert code == 2
    assert json.loads(err)["error"] == "SingularInterior"


def test_powerflow_without_real_roots_exits_2(tmp_path, capsys):
    doc = json.loads((NETLISTS / "path3.json").read_text())
    doc["internal_powers"] = {"2": -1.0}  # below the fold at -1/8
    path = tmp_path / "p.json"
    path.write_text(json.dumps(doc))
    code, _, err = run(capsys, ["powerflow", str(path)])
    assert code == 2
    assert json.loads(err)["error"] == "NoConvergence"


@pytest.mark.parametrize(
    "argv",
    [[], ["frobnicate"], ["resistance", "path3.json"], ["laplacian", "path3.json", "--format", "xml"]],
)
def test_usage_errors_exit_1_with_json(argv, in_corpus, capsys):
    code, out, err = run(capsys, argv)
    assert code == 1 and out == ""
    assert json.loads(err)["error"] == "UsageError"


def test_malformed_json_reports_line(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{\n  "nodes": [,]\n}')
    code, _, err = run(capsys, ["laplacian", str(path)])
    obj = json.loads(err)
    assert code == 1
    assert obj["error"] == "ParseError" and obj["line"] == 2


def test_module_entry_point_exit_codes():
    proc = subprocess.run(
        [sys.executable, "-m", "kirchhoff", "phasor", "reduce", "lc_resonant.json"],
        cwd=NETLISTS, capture_output=True, text=True,
    )
    assert proc.returncode == 2
    assert "Traceback" not in proc.stderr
    assert json.loads(proc.stderr)["error"] == "ResonantInterior"
