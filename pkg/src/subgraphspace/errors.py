"""Exception types callers may want to catch specifically."""


class SizeLimitError(ValueError):
    """Exact enumeration would exceed the configured subset budget."""


class NumericalError(RuntimeError):
    """A numerical routine failed to meet its accuracy contract."""


class InfeasibleError(RuntimeError):
    """A linear program has no feasible point; carries the offending rows."""

    def __init__(self, message: str, constraints: list[str] | None = None):
        super().__init__(message)
        self.constraints = constraints or []
