import subprocess
import sys
from pathlib import Path

import pytest

from valint.cli import main

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"
CORPUS = sorted(SCRIPTS.glob("*.vi"))
CLEAN = {"01_basics", "02_step_functions", "03_fubini", "04_laurent", "05_rank_two",
         "06_matrices", "12_fmt_roundtrip"}


def valint(*args, stdin=None):
    return subprocess.run([sys.executable, "-m", "valint", *args], input=stdin,
                          capture_output=True, text=True, cwd=SCRIPTS)


def test_corpus_is_present():
    assert len(CORPUS) >= 10


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.stem)
def test_golden_transcript(path, capsys):
    golden = (SCRIPTS / "golden" / (path.stem + ".out")).read_text()
    code = main(["run", str(path)])
    assert capsys.readouterr().out == golden
    assert code == (0 if path.stem in CLEAN else 1)


def test_corpus_covers_every_error_code():
    text = "".join((SCRIPTS / "golden" / (p.stem + ".out")).read_text() for p in CORPUS)
    for code in ["E001", "E002", "E003", "E004", "E005", "E006", "E007", "E008",
                 "E010", "E011", "E012", "E013"]:
        assert f"error[{code}]" in text


def test_fmt_is_idempotent_and_preserves_meaning(capsys):
    for path in CORPUS:
        if path.stem not in CLEAN:
            continue
        assert main(["fmt", str(path)]) == 0
        once = capsys.readouterr().out
        proc = valint("fmt", "-", stdin=once)
        assert proc.stdout == once
        again = valint("run", "-", stdin=once)
        assert again.stdout == (SCRIPTS / "golden" / (path.stem + ".out")).read_text()


def test_fmt_reports_syntax_errors(capsys):
    assert main(["fmt", str(SCRIPTS / "07_syntax_errors.vi")]) == 1
    assert "error[E001]" in capsys.readouterr().err


def test_check_is_silent():
    proc = valint("check", "03_fubini.vi")
    assert proc.returncode == 0 and proc.stdout == ""
    assert valint("check", "11_runtime_errors.vi").returncode == 1


def test_missing_file():
    proc = valint("run", "no_such_script.vi")
    assert proc.returncode == 2
    assert proc.stderr.startswith("error[E020]: cannot read no_such_script.vi")


def test_seed_option_is_deterministic():
    a = valint("run", "03_fubini.vi", "--seed", "7")
    b = valint("run", "03_fubini.vi", "--seed", "7")
    assert a.returncode == 0 and a.stdout == b.stdout
