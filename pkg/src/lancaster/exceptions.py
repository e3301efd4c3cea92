"""Exception types shared across the package."""


class InputError(ValueError):
    """Invalid user-supplied input (bad shapes, parameters, or file contents).

    The command line maps this to exit code 2; everything else that escapes
    is treated as a runtime/numerical error (exit code 3).
    """


class DegenerateDataError(InputError):
    """Input is technically well formed but statistically unusable."""
