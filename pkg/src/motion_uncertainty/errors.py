"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the domain where a quantity is defined."""


class ConfigError(ValueError):
    """A configuration value failed validation.

    ``field`` names the offending configuration entry so that callers (the CLI
    in particular) can report it.
    """

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class SpectrumHoleError(DomainError):
    """The sampler spectrum (numerically) vanishes at a requested frequency."""

    def __init__(self, omega: float, magnitude_sq: float):
        super().__init__(
            f"kernel spectrum vanishes at omega={omega:.17g} "
            f"(|psi_hat|^2={magnitude_sq:.3e} < 1e-12)"
        )
        self.omega = omega


class GridMismatchError(ValueError):
    """Two fields were combined that are not sampled on the same grid."""
