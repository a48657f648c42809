"""Exception types raised by the toolkit."""


class DomainError(ArithmeticError):
    """A component evaluation produced a non-finite value or derivative.

    ``component`` is the offending component index; ``group`` is the seed
    column when the failure is in a derivative lane, else ``None``.
    """

    def __init__(self, message, component=None, group=None):
        super().__init__(message)
        self.component = component
        self.group = group


class PlanInfeasibleError(ValueError):
    """A symmetric coloring cannot resolve some Hessian entry."""

    def __init__(self, message, entry=None):
        super().__init__(message)
        self.entry = entry
