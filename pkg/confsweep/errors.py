# Error hierarchy for the whole package
from typing import Optional


class ConfsweepError(Exception):
    # Base for everything raised on purpose
    pass


class ConfigurationError(ConfsweepError):
    # Incidence structure breaks a configuration rule
    pass


class DuplicatePointInLine(ConfigurationError):
    pass


class RegularityViolation(ConfigurationError):
    pass


class SharedPairViolation(ConfigurationError):
    pass


class Disconnected(ConfigurationError):
    pass


class RecordFormatError(ConfsweepError):
    # Malformed JSONL record or table text
    pass


class NotInTable(ConfsweepError):
    # Segment tuple has wrong length or sum for the table
    pass


class LambdaNotMaximal(ConfsweepError):
    pass


class InfeasibleClosure(ConfsweepError):
    pass


class CanonicityReject(ConfsweepError):
    pass


class MixedParameters(ConfsweepError):
    pass


class BudgetExceeded(ConfsweepError):
    pass


class ZeroVector(ConfsweepError):
    pass


class MissingHistory(ConfsweepError):
    pass


class ReplayMismatch(ConfsweepError):
    # Carries the first divergent event index

    def __init__(self, index: int, reason: str, detail: Optional[str] = None):
        self.index = index
        self.reason = reason
        message = f"event {index}: {reason}"
        if detail:
            message = f"{message} ({detail})"
        super().__init__(message)
