"""Exception types shared across the package."""


class EdgewallError(Exception):
    """Base class for all package-specific errors."""


class DomainError(EdgewallError, ValueError):
    """An input lies outside the mathematical domain of an operation."""


class SingularEndpointError(DomainError):
    """Operator evaluation requested at an endpoint where the integrand is singular."""


class WindowError(DomainError):
    """A fit window is unusable (too few nodes, or sign changes inside it)."""


class ProfileParseError(EdgewallError, ValueError):
    """A profile file could not be parsed. Carries the offending line number."""

    def __init__(self, message, line_number=None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class DivergenceError(EdgewallError, ArithmeticError):
    """The relaxation produced a non-finite value. Carries the failing step."""

    def __init__(self, step):
        super().__init__(f"relaxation diverged (non-finite values) at step {step}")
        self.step = step


class StabilityError(EdgewallError, ArithmeticError):
    """The relaxation energy grew persistently; the time step is too large."""

    def __init__(self, step, dt):
        super().__init__(
            f"energy increased over 10 consecutive samples (step {step}); "
            f"reduce the time step (current dt={dt:g})"
        )
        self.step = step
        self.dt = dt
