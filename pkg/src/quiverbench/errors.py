class InputError(ValueError):
    """Raised for malformed or inconsistent input data."""


class UnsupportedError(InputError):
    """Raised when the input is valid but outside what an operation handles."""
