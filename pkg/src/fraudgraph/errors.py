"""Exception hierarchy shared across the package.

Exit codes used by the CLI: parse errors 2, completeness errors 3, domain
errors 4, I/O errors 5 (plain OSError), anything else 1.
"""

from __future__ import annotations


class FraudGraphError(Exception):
    """Base class for all package errors."""

    exit_code = 1


class DomainError(FraudGraphError, ValueError):
    """A value is outside its documented domain (e.g. a score not in [0, 1])."""

    exit_code = 4


class FitError(FraudGraphError, ValueError):
    """Density fitting cannot proceed (empty samples, zero-density bins, ...)."""


class ContractError(FraudGraphError, ValueError):
    """An operation was called in a way its contract forbids."""


class DecisionError(FraudGraphError, ValueError):
    """No decision can be made (all hypotheses have -inf log-likelihood)."""


class OracleSizeError(FraudGraphError, ValueError):
    """The brute-force oracle refuses graphs above its enumeration bound."""


class ParseError(FraudGraphError, ValueError):
    """An input file is malformed.

    ``line`` carries the 1-based offending line number when known.
    """

    exit_code = 2

    def __init__(self, message: str, *, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class CompletenessError(FraudGraphError, ValueError):
    """Required pairwise scores are missing.

    ``missing`` lists every absent (image_a, image_b) pair.
    """

    exit_code = 3

    def __init__(self, missing: list[tuple[str, str]]):
        self.missing = list(missing)
        preview = ", ".join(f"{a}~{b}" for a, b in self.missing[:10])
        more = "" if len(self.missing) <= 10 else f" (+{len(self.missing) - 10} more)"
        super().__init__(
            f"{len(self.missing)} required pairwise score(s) missing: {preview}{more}"
        )
