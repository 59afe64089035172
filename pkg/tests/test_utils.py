import io
import logging
import sys

import pytest

from weighted_trees.config import Config
from weighted_trees.utils import (
    InputFormatError, create_error_result, divisors, json_safe, parse_int_list, require_int,
    setup_logging,
)


def test_json_safe_large_integers():
    limit = Config.JSON_SAFE_INT
    data = {"small": limit, "large": limit + 1, "negative": -(limit + 1), "flag": True,
            "nested": [1, (limit * 4, None)], 3: "x"}
    assert json_safe(data) == {
        "small": limit,
        "large": str(limit + 1),
        "negative": str(-(limit + 1)),
        "flag": True,
        "nested": [1, [str(limit * 4), None]],
        "3": "x",
    }


@pytest.mark.parametrize("value, expected", [(4, 4), ("4", 4), (" -2 ", -2)])
def test_require_int(value, expected):
    assert require_int(value, "n") == expected


@pytest.mark.parametrize("value", [True, "--4", "²", "4.0", "", None, 4.0, [4]])
def test_require_int_rejects(value):
    with pytest.raises(InputFormatError, match="'n'"):
        require_int(value, "n")


def test_parse_int_list():
    assert parse_int_list("1, 1,2") == (1, 1, 2)
    with pytest.raises(InputFormatError, match="'r'"):
        parse_int_list("1,,2")
    with pytest.raises(InputFormatError, match="비어"):
        parse_int_list("  ")


def test_divisors():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(1) == [1]
    assert divisors(0) == []


def test_create_error_result():
    assert create_error_result("오류", "ctx") == {"error": True, "message": "오류", "context": "ctx"}


def test_setup_logging_replaces_closed_stream(monkeypatch):
    closed = io.StringIO()
    monkeypatch.setattr(sys, "stderr", closed)
    setup_logging("INFO")
    closed.close()

    fresh = io.StringIO()
    monkeypatch.setattr(sys, "stderr", fresh)
    root = setup_logging("INFO")
    logging.getLogger("weighted_trees.test").info("다시 연결됨")

    assert "다시 연결됨" in fresh.getvalue()
    assert len([h for h in root.handlers if getattr(h, "_weighted_trees", False)]) == 1
    setup_logging(Config.LOG_LEVEL)
