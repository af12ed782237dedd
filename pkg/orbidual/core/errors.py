"""Error types, stable exit codes, and JSON error formatting for orbidual."""

from __future__ import annotations

import json
import sys
from typing import Any

# Stable exit codes for automation/agent consumption.
EXIT_SUCCESS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CANCELLED = 130

EXIT_CODE_MAP: dict[str, dict[str, Any]] = {
    "SUCCESS": {"code": EXIT_SUCCESS, "description": "All checks within tolerance"},
    "FAIL": {"code": EXIT_FAIL, "description": "Scenario or check outside tolerance, or generic failure"},
    "DIMENSION_MISMATCH": {"code": EXIT_FAIL, "description": "Operands live in different algebras or have wrong length"},
    "NOT_A_BIALGEBRA": {"code": EXIT_FAIL, "description": "Assembled bracket violates Jacobi"},
    "REPRESENTATION_ERROR": {"code": EXIT_FAIL, "description": "Matrix not in the span of the embedded algebra"},
    "FACTORIZATION_FAILED": {"code": EXIT_FAIL, "description": "Element has no factorization in the double"},
    "DOMAIN_ERROR": {"code": EXIT_FAIL, "description": "Input outside the domain of the operation"},
    "ALPHA_CONDITION": {"code": EXIT_FAIL, "description": "Shift does not satisfy the factor condition"},
    "INVALID_TAGS": {"code": EXIT_FAIL, "description": "Undefined symplectic/action/momentum combination"},
    "NUMERICAL_ERROR": {"code": EXIT_FAIL, "description": "Singular system or failed projection"},
    "BLOW_UP": {"code": EXIT_FAIL, "description": "Integration produced non-finite values"},
    "SINGULAR_BLOCK": {"code": EXIT_FAIL, "description": "Operator block not invertible"},
    "INCOMPATIBLE_MOMENTA": {"code": EXIT_FAIL, "description": "Initial momenta of dual spaces differ"},
    "BAND_OVERFLOW": {"code": EXIT_FAIL, "description": "Loop bracket exceeds the exact band"},
    "MONODROMY_INCONSISTENT": {"code": EXIT_FAIL, "description": "Path samples disagree with their monodromy"},
    "USAGE": {"code": EXIT_USAGE, "description": "Usage or parse error"},
    "CONFIG_ERROR": {"code": EXIT_USAGE, "description": "Invalid scenario or user configuration"},
    "UNKNOWN_SCENARIO": {"code": EXIT_USAGE, "description": "Scenario name not registered"},
    "CANCELLED": {"code": EXIT_CANCELLED, "description": "Interrupted (SIGINT)"},
}


class OrbidualError(Exception):
    """Base error for all orbidual errors."""

    code: str = "ORBIDUAL_ERROR"
    exit_code: int = EXIT_FAIL
    hint: str = ""

    def __init__(self, message: str, code: str | None = None):
        super().__init__(message)
        if code:
            self.code = code

    def extras(self) -> dict[str, Any]:
        return {}


class ConfigurationError(OrbidualError):
    code = "CONFIG_ERROR"
    exit_code = EXIT_USAGE
    hint = "Run: orbidual list-scenarios --json  to see parameter schemas"

    def __init__(self, message: str, schema: dict[str, Any] | None = None):
        super().__init__(message)
        self.schema = schema
        if schema is not None:
            self.hint = "Expected params: " + json.dumps(schema, sort_keys=True, default=str)

    def extras(self) -> dict[str, Any]:
        return {"schema": self.schema} if self.schema is not None else {}


class UnknownScenarioError(OrbidualError):
    code = "UNKNOWN_SCENARIO"
    exit_code = EXIT_USAGE
    hint = "Run: orbidual list-scenarios"


class DimensionError(OrbidualError):
    code = "DIMENSION_MISMATCH"


class BialgebraError(OrbidualError):
    code = "NOT_A_BIALGEBRA"

    def __init__(self, message: str, witness: tuple[int, ...] | None = None, residual: float = 0.0):
        super().__init__(message)
        self.witness = witness
        self.residual = residual

    def extras(self) -> dict[str, Any]:
        return {"witness": list(self.witness) if self.witness else None, "residual": self.residual}


class RepresentationError(OrbidualError):
    code = "REPRESENTATION_ERROR"


class FactorizationError(OrbidualError):
    code = "FACTORIZATION_FAILED"
    hint = "Duality transformations are only defined where the double factorizes"


class DomainError(OrbidualError):
    code = "DOMAIN_ERROR"


class ConditionError(OrbidualError):
    code = "ALPHA_CONDITION"
    hint = "Choose the shift in the torus directions (see: orbidual check extension)"

    def __init__(self, message: str, residual: float = 0.0):
        super().__init__(message)
        self.residual = residual

    def extras(self) -> dict[str, Any]:
        return {"residual": self.residual}


class TagCombinationError(OrbidualError):
    code = "INVALID_TAGS"


class NumericalError(OrbidualError):
    code = "NUMERICAL_ERROR"


class BlowUpError(NumericalError):
    code = "BLOW_UP"
    hint = "Reduce dt or shorten the horizon"

    def __init__(self, message: str, time: float = 0.0):
        super().__init__(message)
        self.time = time

    def extras(self) -> dict[str, Any]:
        return {"time": self.time}


class SingularBlockError(NumericalError):
    code = "SINGULAR_BLOCK"


class PreconditionError(OrbidualError):
    code = "INCOMPATIBLE_MOMENTA"

    def __init__(self, message: str, momentum_a: Any = None, momentum_b: Any = None):
        super().__init__(message)
        self.momentum_a = momentum_a
        self.momentum_b = momentum_b

    def extras(self) -> dict[str, Any]:
        return {"momentum_a": self.momentum_a, "momentum_b": self.momentum_b}


class PolicyError(OrbidualError):
    code = "BAND_OVERFLOW"
    hint = "Use project_to_band or raise the band"


class MonodromyError(OrbidualError):
    code = "MONODROMY_INCONSISTENT"


def exit_code_for(error: Exception) -> int:
    """Return the stable exit code for an error."""
    if isinstance(error, OrbidualError):
        return error.exit_code
    return EXIT_FAIL


def format_error_json(error: Exception) -> dict[str, Any]:
    """Format an error as a JSON-serializable dict."""
    code = getattr(error, "code", "UNKNOWN_ERROR")
    result: dict[str, Any] = {
        "error": str(error),
        "code": code,
        "exit_code": exit_code_for(error),
    }
    if isinstance(error, OrbidualError):
        result.update(error.extras())
    return result


def emit_error(error: Exception, use_json: bool = False) -> None:
    """Emit an error to stderr (human) and optionally stdout (JSON)."""
    if use_json:
        json.dump(format_error_json(error), sys.stdout, default=str)
        sys.stdout.write("\n")
        sys.stdout.flush()

    hint = getattr(error, "hint", "")
    if hint:
        print(f"Error: {error}\n  {hint}", file=sys.stderr)
    else:
        print(f"Error: {error}", file=sys.stderr)
