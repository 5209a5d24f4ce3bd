from __future__ import annotations

import argparse
import io
import json
import logging

import pandas as pd
import pytest

import fideal
import fideals
from fideals import CliConfig, main, parse_pairs, run
from helpers import FIXTURES
from monomial.complexes import SimplicialComplex

DEGREE3 = str(FIXTURES / "degree3_f_ideal.ideal")
FIVE_VARIABLE = str(FIXTURES / "five_variable_nonexample.ideal")
MIXED_COVER = str(FIXTURES / "mixed_cover_f_ideal.ideal")
DEGREE3_INLINE = "n=6; 123 125 134 145 156 234 236 246 345 356"


@pytest.fixture(autouse=True)
def reset_logger():
    yield
    logger = logging.getLogger("fideals")
    for h in list(logger.handlers):
        logger.removeHandler(h)
        h.close()
    logger.propagate = True


def run_capture(**kwargs):
    out = io.StringIO()
    code = run(CliConfig(**kwargs), out=out)
    return code, out.getvalue()


def test_check_f_ideal_from_file():
    code, text = run_capture(subcommand="check", input=DEGREE3, expect_f_ideal=True)
    assert code == 0
    lines = text.splitlines()
    assert lines[0].startswith("ideal: (x1x2x3, ")
    assert "f(δ_F): (6, 15, 10)" in lines
    assert "f(δ_N): (6, 15, 10)" in lines
    assert "characterization: true" in lines
    assert lines[-1] == "f-ideal: true"


def test_check_expect_f_ideal_fails_on_non_example():
    code, text = run_capture(subcommand="check", input=FIVE_VARIABLE, expect_f_ideal=True)
    assert code == 1
    assert text.splitlines()[-1] == "f-ideal: false"
    code, _ = run_capture(subcommand="check", input=FIVE_VARIABLE)
    assert code == 0


def test_decompose_golden_line():
    code, text = run_capture(subcommand="decompose", input=FIVE_VARIABLE)
    assert code == 0
    assert text.splitlines() == [
        "(x1,x3) ∩ (x1,x5) ∩ (x2,x4) ∩ (x2,x5) ∩ (x4,x5)",
        "components: 5  height: 2  unmixed: true",
    ]


def test_fvector_json_matches_text():
    _, text = run_capture(subcommand="fvector", input=FIVE_VARIABLE)
    code, raw = run_capture(subcommand="fvector", input=FIVE_VARIABLE, format="json")
    assert code == 0
    payload = json.loads(raw)
    assert payload["f_facet"] == [5, 9, 5]
    assert payload["f_nonface"] == [5, 10, 5]
    assert "f(δ_F) = (5, 9, 5)" in text
    assert "f(δ_N) = (5, 10, 5)" in text


def test_fvector_reads_stdin():
    out = io.StringIO()
    code = run(CliConfig(subcommand="fvector", input="-"), out=out, stdin=io.StringIO("n=4\n12 23 34\n"))
    assert code == 0
    assert "f(δ_F) = (4, 3)" in out.getvalue()
    assert "δ_N(I) = <{1,3}, {1,4}, {2,4}>" in out.getvalue()


@pytest.mark.parametrize(
    "source",
    ["n=3; 12 123", "n=3; 19", "not an ideal", "/nonexistent/dir/missing.ideal"],
)
def test_input_errors_exit_2(source):
    code, text = run_capture(subcommand="check", input=source)
    assert code == 2
    assert text == ""


def test_strict_by_default_only_for_check(capsys):
    assert main(["check", "--ideal", "n=3; 12 123"]) == 2
    assert main(["fvector", "--ideal", "n=3; 12 123"]) == 0
    assert "f(δ_F) = (2, 1)" in capsys.readouterr().out
    assert main(["fvector", "--strict", "--ideal", "n=3; 12 123"]) == 2


def test_missing_ideal_is_input_error():
    assert main(["check"]) == 2


def test_check_json_via_main(capsys):
    assert main(["check", "--format", "json", "--ideal", "n=5; 124 125 345 145 235"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["f_ideal"] is False
    assert payload["f_facet"] == [5, 9, 5]
    assert payload["conditions"]["skeleton"]["pass"] is False
    assert payload["theorem_violation"] is False
    assert payload["violation"] is None


def test_hilbert_verify(capsys):
    assert main(["hilbert", "--verify", "--ideal", DEGREE3_INLINE]) == 0
    out = capsys.readouterr().out
    assert "Hilbert function: 1, 6, 21, 46, 81, 126" in out
    assert out.startswith("H(t) = ")


def test_census_pruned_text():
    code, text = run_capture(subcommand="census", n=6, d=2)
    assert code == 0
    assert "C(6,2)=15 is odd: no f-ideals, nothing scanned" in text
    assert "f-ideals (definition): 0" in text


def test_census_writes_artifacts(tmp_path):
    for _ in range(2):
        code, _ = run_capture(subcommand="census", n=4, d=2, output_dir=str(tmp_path))
        assert code == 0
    df = pd.read_csv(tmp_path / "census.csv")
    assert len(df) == 1
    assert df["f_ideals"].iloc[0] == 12
    assert (tmp_path / "census.html").read_text(encoding="utf-8").startswith("<!doctype html>")
    reps = pd.read_csv(tmp_path / "representatives_n4_d2.csv")
    assert len(reps) == 5
    assert reps["f_ideal"].all()
    status = json.loads((tmp_path / "last_run.json").read_text(encoding="utf-8"))
    assert status["ok"] is True
    assert status["rows_total"] == 1


def test_census_watch_via_main(capsys):
    assert main(["census", "--n", "4", "--d", "2", "--watch", "n=4; 12 23 34", "--no-progress"]) == 0
    assert "watch (x1x2, x2x3, x3x4): f-ideal: true" in capsys.readouterr().out


def test_suite_via_main(capsys):
    assert main(["suite", "--pairs", "4,2 5,2", "--samples", "20", "--no-progress"]) == 0
    assert capsys.readouterr().out.endswith("ok: true\n")


def test_parse_pairs():
    assert parse_pairs("4,2 5,3") == ((4, 2), (5, 3))
    with pytest.raises(argparse.ArgumentTypeError):
        parse_pairs("4-2")
    with pytest.raises(argparse.ArgumentTypeError):
        parse_pairs("")


def test_config_validation():
    with pytest.raises(ValueError):
        CliConfig(subcommand="census", n=4)
    with pytest.raises(ValueError):
        CliConfig(subcommand="check", input="x", format="xml")
    with pytest.raises(ValueError):
        CliConfig(subcommand="frobnicate")


def test_check_reports_necessity_violation_without_failing():
    code, text = run_capture(subcommand="check", input=MIXED_COVER, expect_f_ideal=True)
    assert code == 0
    lines = text.splitlines()
    assert "f(δ_F): (5, 10, 5)" in lines
    assert "characterization: false" in lines
    assert "THEOREM-VIOLATION (necessity): f-ideal by definition, characterization fails" in lines
    assert lines[-1] == "f-ideal: true"


def test_strict_theorem_turns_necessity_violation_into_exit_3(capsys):
    assert main(["check", "--ideal", "n=5; 123 124 145 234 235"]) == 0
    assert main(["check", "--strict-theorem", "--ideal", "n=5; 123 124 145 234 235"]) == 3
    assert main(["check", "--strict-theorem", "--ideal", DEGREE3_INLINE]) == 0


def test_check_json_names_the_violation(capsys):
    assert main(["check", "--format", "json", "--ideal", "n=5; 123 124 145 234 235"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["f_ideal"] is True
    assert payload["characterization"] is False
    assert payload["violation"] == "necessity"


def test_sufficiency_violation_exits_3(monkeypatch):
    monkeypatch.setattr(fideal, "nonface_complex", lambda g: SimplicialComplex.from_masks(g.n, [(1 << g.n) - 1]))
    code, text = run_capture(subcommand="check", input=DEGREE3)
    assert code == 3
    assert "THEOREM-VIOLATION (sufficiency)" in text


def test_suite_on_degree3_pairs_is_ok_unless_strict(capsys):
    assert main(["suite", "--pairs", "5,3", "--samples", "10", "--no-progress"]) == 0
    out = capsys.readouterr().out
    assert "disagreements: 120" in out
    assert "sufficiency failures: 0" in out
    assert out.endswith("ok: true\n")
    assert main(["suite", "--pairs", "5,3", "--samples", "10", "--no-progress", "--strict-theorem"]) == 3


def test_census_strict_theorem(capsys):
    assert main(["census", "--n", "5", "--d", "3", "--no-progress"]) == 0
    assert "disagreements: 60" in capsys.readouterr().out
    assert main(["census", "--n", "5", "--d", "3", "--no-progress", "--strict-theorem"]) == 3
    assert main(["census", "--n", "4", "--d", "2", "--no-progress", "--strict-theorem"]) == 0


def test_decompose_passes_seed(monkeypatch):
    seen = []
    original = fideals.primary_decomposition

    def recording(ideal, *, seed):
        seen.append(seed)
        return original(ideal, seed=seed)

    monkeypatch.setattr(fideals, "primary_decomposition", recording)
    code, _ = run_capture(subcommand="decompose", input=FIVE_VARIABLE, seed=123)
    assert code == 0
    assert seen == [123]
