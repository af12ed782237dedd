"""Tests for exit codes and error emission."""

from __future__ import annotations

import json

from orbidual.core.errors import (
    EXIT_CODE_MAP,
    EXIT_FAIL,
    EXIT_USAGE,
    BialgebraError,
    BlowUpError,
    ConditionError,
    ConfigurationError,
    FactorizationError,
    OrbidualError,
    PreconditionError,
    UnknownScenarioError,
    emit_error,
    exit_code_for,
    format_error_json,
)


class TestExitCodes:
    def test_base_error(self):
        assert exit_code_for(OrbidualError("fail")) == EXIT_FAIL

    def test_config_error_is_usage(self):
        assert exit_code_for(ConfigurationError("bad config")) == EXIT_USAGE

    def test_unknown_scenario_is_usage(self):
        assert exit_code_for(UnknownScenarioError("nope")) == EXIT_USAGE

    def test_domain_failures(self):
        for err in (FactorizationError("x"), ConditionError("x"), BlowUpError("x")):
            assert exit_code_for(err) == EXIT_FAIL

    def test_generic_exception(self):
        assert exit_code_for(ValueError("oops")) == EXIT_FAIL

    def test_every_code_documented(self):
        codes = {
            cls.code for cls in (
                ConfigurationError, UnknownScenarioError, BialgebraError,
                FactorizationError, ConditionError, BlowUpError, PreconditionError,
            )
        }
        assert codes <= set(EXIT_CODE_MAP)


class TestFormatErrorJson:
    def test_basic_error(self):
        result = format_error_json(OrbidualError("something broke"))
        assert result["error"] == "something broke"
        assert result["code"] == "ORBIDUAL_ERROR"
        assert result["exit_code"] == EXIT_FAIL

    def test_bialgebra_includes_witness(self):
        result = format_error_json(BialgebraError("jacobi", witness=(0, 1, 2), residual=0.5))
        assert result["witness"] == [0, 1, 2]
        assert result["residual"] == 0.5
        assert result["code"] == "NOT_A_BIALGEBRA"

    def test_config_error_carries_schema(self):
        schema = {"scenario": "s", "params": {"T": {"default": 1.0, "type": "number"}}}
        err = ConfigurationError("bad T", schema=schema)
        result = format_error_json(err)
        assert result["schema"] == schema
        assert "Expected params" in err.hint

    def test_unknown_exception(self):
        result = format_error_json(RuntimeError("crash"))
        assert result["code"] == "UNKNOWN_ERROR"


class TestEmitError:
    def test_json_mode(self, capsys):
        emit_error(OrbidualError("test error"), use_json=True)
        captured = capsys.readouterr()
        data = json.loads(captured.out)
        assert data["error"] == "test error"
        assert "Error: test error" in captured.err

    def test_human_mode(self, capsys):
        emit_error(OrbidualError("test error"), use_json=False)
        captured = capsys.readouterr()
        assert captured.out == ""
        assert "Error: test error" in captured.err

    def test_hint_shown(self, capsys):
        emit_error(UnknownScenarioError("Unknown scenario: 'x'"), use_json=False)
        captured = capsys.readouterr()
        assert "Run: orbidual list-scenarios" in captured.err
