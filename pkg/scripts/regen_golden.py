"""Regenerate the CLI golden transcripts under tests/data/golden.

Run after an intentional change to CLI output, then review the diff.
"""
import contextlib
import io
import json
import os
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from golden_cases import CASES, GOLDEN, NETLISTS, golden_path  # noqa: E402

from kirchhoff.cli import main  # noqa: E402


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(argv)
    return {"argv": argv, "exit": code, "stdout": out.getvalue(), "stderr": err.getvalue()}


def main_():
    GOLDEN.mkdir(parents=True, exist_ok=True)
    os.chdir(NETLISTS)
    for name, argv in CASES.items():
        record = run(argv)
        golden_path(name).write_text(json.dumps(record, indent=2) + "\n", encoding="utf-8")
        print(f"{name}: exit {record['exit']}")


if __name__ == "__main__":
    main_()
