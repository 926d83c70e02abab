"""Exception types shared by every module of the verifier."""

from typing import Optional

from pydantic import ValidationError


class DomainError(ValueError):
    """Raised when an input lies outside the mathematical domain of an operation."""


class ConfigError(DomainError):
    """Raised when a verification or render configuration is invalid."""


class VerificationError(Exception):
    """Raised when a validation-mode check disagrees with its closed form."""


class ParseError(ValueError):
    """Raised for malformed batch input.

    Args:
        message: Human readable description of the problem
        line: 1-based line number in the input stream
    """

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def build_config(model, **values):
    """
    Instantiate a pydantic config model, reporting invalid values as ConfigError.

    Args:
        model: pydantic BaseModel subclass
        **values: Field values; None means "use the default"

    Returns:
        An instance of model
    """
    values = {key: value for key, value in values.items() if value is not None}
    try:
        return model(**values)
    except ValidationError as exc:
        problems = "; ".join(
            f"{'.'.join(str(part) for part in err['loc'])}: {err['msg']}" for err in exc.errors()
        )
        raise ConfigError(f"invalid {model.__name__}: {problems}") from None
