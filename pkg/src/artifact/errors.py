"""Error types; each carries the CLI exit code it maps to."""


class AtlasError(Exception):
    exit_code = 1


class InputError(AtlasError, ValueError):
    """Malformed input: bad schema, unparsable rational, unknown suite."""

    exit_code = 2


class PreconditionError(AtlasError, ValueError):
    """Well-formed input that violates a mathematical precondition."""

    exit_code = 3


class PropertyFailure(AtlasError):
    """A checked identity failed."""

    exit_code = 4


class SolverFailure(PropertyFailure, RuntimeError):
    """The witness solver found no solution where one must exist."""
