"""Exception types shared by the package and mapped to CLI exit codes."""


class InputError(ValueError):
    """Malformed or inconsistent input (exit code 2)."""


class ResourceError(RuntimeError):
    """A configured size bound was exceeded (exit code 3)."""


class InvariantBreach(RuntimeError):
    """Two routes that must agree did not; indicates an implementation bug."""
