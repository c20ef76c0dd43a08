# errors.py
"""
Exception types shared by every PicardCalc module.
Library code raises; only main.py catches and reports.
"""


class PicardError(Exception):
    """Base class for errors reported with a structured record."""

    code = "error"

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_record(self) -> dict[str, str]:
        record = {"error": self.code, "message": self.message}
        record.update({k: str(v) for k, v in self.details.items()})
        return record


class DomainError(PicardError, ValueError):
    """An operation was called outside its precondition."""

    code = "domain_error"


class ConfigError(PicardError):
    """The settings file could not be used."""

    code = "config_error"
