import importlib.util
import io
import json
import os
import sys

import pandas as pd
import pytest

import run_app
from weighted_trees.cli import build_parser, main
from weighted_trees.config import Config

CAT4 = '{"n": 4, "diagonals": [[1, 3]]}'
FAN6 = '{"n": 6, "diagonals": [[1, 3], [1, 4], [1, 5]]}'
ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def _json_lines(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def test_trees_json(capsys):
    assert main(["trees", "--leaves", "5"]) == 0
    lines = _json_lines(capsys.readouterr().out)
    assert len(lines) == 5
    assert lines[0] == {"index": 0, "n": 5, "diagonals": [[1, 3], [1, 4]]}


def test_trees_tsv(capsys):
    assert main(["trees", "--leaves", "4", "--format", "tsv"]) == 0
    assert capsys.readouterr().out.splitlines() == ["index\tdiagonals", "0\t1-3", "1\t2-4"]


def test_enumerate(capsys):
    assert main(["enumerate", "--tree", CAT4, "--r", "1,1,1,1", "--degree", "1"]) == 0
    lines = _json_lines(capsys.readouterr().out)
    assert [line["internal"]["1-3"] for line in lines] == [0, 2]

    assert main(["enumerate", "--tree", CAT4, "--r", "1,1,1,1", "--degree", "2", "--interior"]) == 0
    lines = _json_lines(capsys.readouterr().out)
    assert lines == [{"leaf": {"1": 2, "2": 2, "3": 2, "4": 2}, "internal": {"1-3": 2}}]


def test_hilbert(capsys):
    assert main(["hilbert", "--tree", CAT4, "--r", "1,1,1,1", "--max-degree", "3"]) == 0
    assert capsys.readouterr().out == "k\tcount\n0\t1\n1\t2\n2\t3\n3\t4\n"

    assert main(["hilbert", "--tree", CAT4, "--r", "1,1,1,1", "--max-degree", "1", "--format", "json"]) == 0
    assert _json_lines(capsys.readouterr().out) == [{"k": 0, "count": 1}, {"k": 1, "count": 2}]


def test_piping(capsys, tmp_path):
    weighting = tmp_path / "omega.json"
    weighting.write_text('{"leaf": {"1": 2, "2": 2, "3": 2, "4": 2}, "internal": {"1-3": 4}}', encoding="utf-8")

    assert main(["piping", "--tree", CAT4, "--weighting", str(weighting)]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data == {"n": 4, "chords": [{"ends": [1, 4], "mult": 2}, {"ends": [2, 3], "mult": 2}]}

    assert main(["piping", "--tree", CAT4, "--weighting", str(weighting), "--dot"]) == 0
    dot = capsys.readouterr().out
    assert '  1 -- 4 [label="2", penwidth=2];' in dot


def test_classify(capsys):
    assert main(["classify", "--tree", FAN6, "--r", "3,3,2,2,2,2"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["is_gorenstein"] is False
    assert data["failure"] == {"kind": "DeficitAt", "pair": [1, 2], "value": 1, "degree": 1}

    assert main(["classify", "--tree", CAT4, "--r", "6,4,3,3"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["a_invariant"] == -1
    assert data["generator"]["internal"] == {"1-3": 4}


def test_oracle(capsys):
    assert main(["oracle", "--tree", CAT4, "--r", "1,1,1,1", "--depth", "4"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["is_gorenstein"] is True
    assert data["method"] == "oracle"
    assert data["depth"] == 4
    assert data["a"] == 2


def test_oracle_default_depth(capsys):
    assert main(["oracle", "--tree", CAT4, "--r", "6,4,3,3"]) == 0
    assert json.loads(capsys.readouterr().out)["depth"] == 3


def test_survey_stdout(capsys):
    assert main(["survey", "--leaves", "4", "--max-entry", "2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].split("\t") == ["r", "tree_index", "diagonals", "verdict", "a", "oracle", "depth", "agree"]
    assert len(lines) == 17
    assert lines[1].split("\t")[:5] == ["1,1,1,1", "0", "1-3", "Gorenstein(a=2)", "2"]


def test_survey_output_file(tmp_path):
    path = tmp_path / "out" / "survey.tsv"
    assert main(["survey", "--leaves", "4", "--max-entry", "1", "--output", str(path)]) == 0
    frame = pd.read_csv(path, sep="\t")
    assert len(frame) == 2
    assert frame["agree"].all()


def test_survey_reports_disagreement(monkeypatch, capsys):
    from weighted_trees import survey

    monkeypatch.setattr(survey, "verdicts_agree", lambda first, second: False)
    assert main(["survey", "--leaves", "4", "--max-entry", "1"]) == Config.exit_code("disagreement")


@pytest.mark.parametrize("argv", [
    [],
    ["bogus"],
    ["trees"],
    ["classify", "--tree", CAT4],
    ["hilbert", "--tree", CAT4, "--r", "1,1,1,1", "--max-degree", "x"],
])
def test_usage_errors(argv, capsys):
    assert main(argv) == Config.exit_code("usage")
    assert "usage" in capsys.readouterr().err


@pytest.mark.parametrize("argv, message", [
    (["classify", "--tree", CAT4, "--r", "1,1,1"], "홀수"),
    (["classify", "--tree", CAT4, "--r", "2,2,2"], "잎 개수"),
    (["classify", "--tree", '{"n": 4, "diagonals": [[1, 2]]}', "--r", "1,1,1,1"], "퇴화"),
    (["classify", "--tree", '{"n": 4,', "--r", "1,1,1,1"], "JSON"),
    (["classify", "--tree", "missing.json", "--r", "1,1,1,1"], "찾을 수 없습니다"),
    (["enumerate", "--tree", CAT4, "--r", "1,1,1,1", "--degree", "-1"], "degree"),
    (["piping", "--tree", CAT4, "--weighting", '{"leaf": {}, "internal": {}}'], "leaf.1"),
    (["piping", "--tree", CAT4, "--weighting",
      '{"leaf": {"1": 1, "2": 1, "3": 1, "4": 1}, "internal": {"1-3": 1}}'], "반군 원소"),
    (["survey", "--leaves", "4", "--max-entry", "0"], "max-entry"),
])
def test_validation_errors(argv, message, capsys):
    assert main(argv) == Config.exit_code("validation")
    captured = capsys.readouterr()
    assert captured.out == ""
    error = json.loads(captured.err.strip().splitlines()[-1])
    assert error["error"] is True
    assert message in error["message"]


def test_parser_lists_every_subcommand():
    help_text = build_parser().format_help()
    for name in ("trees", "enumerate", "hilbert", "piping", "classify", "oracle", "survey"):
        assert name in help_text


def test_run_app_dependency_check():
    assert run_app.check_dependencies() is True


def _load_cache_script():
    path = os.path.join(ROOT, "scripts", "generate_survey_cache.py")
    spec = importlib.util.spec_from_file_location("generate_survey_cache", path)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def test_generate_survey_cache(monkeypatch, tmp_path):
    monkeypatch.setattr(Config, "OUTPUT_DIR", str(tmp_path))
    script = _load_cache_script()
    assert script.main(["--leaves", "4", "--max-entry", "2", "--max-k", "2"]) == 0

    survey = pd.read_csv(tmp_path / "survey_n4_m2.tsv", sep="\t")
    assert len(survey) == 16
    independence = pd.read_csv(tmp_path / "independence_n4_m2.tsv", sep="\t")
    assert list(independence.columns) == ["r", "verdict", "h0", "h1", "h2", "independent"]
    assert independence["independent"].all()


def test_main_survives_closed_stderr_from_earlier_run(monkeypatch, capsys):
    first = io.StringIO()
    monkeypatch.setattr(sys, "stderr", first)
    assert main(["trees", "--leaves", "4"]) == 0
    first.close()

    monkeypatch.setattr(sys, "stderr", io.StringIO())
    assert main(["trees", "--leaves", "4"]) == 0
    assert main(["classify", "--tree", CAT4, "--r", "1,1,1"]) == Config.exit_code("validation")
    assert "홀수" in sys.stderr.getvalue()


def test_main_repeated_across_capture_sessions(capsys):
    assert main(["trees", "--leaves", "4"]) == 0
    capsys.readouterr()
    assert main(["trees", "--leaves", "5"]) == 0
    assert len(_json_lines(capsys.readouterr().out)) == 5


def test_log_level_choices(capsys):
    assert main(["--log-level", "foo", "trees", "--leaves", "4"]) == Config.exit_code("usage")
    assert "usage" in capsys.readouterr().err
    assert main(["--log-level", "debug", "trees", "--leaves", "4"]) == 0


@pytest.mark.parametrize("payload", [
    '{"n": "--4", "diagonals": [[1, 3]]}',
    '{"n": "²", "diagonals": [[1, 3]]}',
])
def test_bad_integer_field_is_validation_error(payload, capsys):
    assert main(["classify", "--tree", payload, "--r", "1,1,1,1"]) == Config.exit_code("validation")
    error = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert "'n'" in error["message"]


def test_survey_rejects_three_leaves(capsys):
    assert main(["survey", "--leaves", "3", "--max-entry", "2"]) == Config.exit_code("validation")
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "잎 4개 이상" in json.loads(captured.err.strip().splitlines()[-1])["message"]


def test_piping_dot_of_two_tree_is_cycle(capsys):
    weighting = json.dumps({
        "leaf": {str(i): 2 for i in range(1, 7)},
        "internal": {"1-3": 2, "1-4": 2, "1-5": 2},
    })
    assert main(["piping", "--tree", FAN6, "--weighting", weighting, "--dot"]) == 0
    edges = {line.strip() for line in capsys.readouterr().out.splitlines() if "--" in line}
    assert edges == {"1 -- 2;", "2 -- 3;", "3 -- 4;", "4 -- 5;", "5 -- 6;", "1 -- 6;"}
