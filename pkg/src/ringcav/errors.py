"""Exception types raised across the package."""


class ParameterError(ValueError):
    """A physical parameter is out of its admissible range."""

    def __init__(self, name, message):
        super().__init__(f"{name}: {message}")
        self.name = name


class UnstableSystem(RuntimeError):
    """The drift matrix is not Hurwitz, so no steady state exists."""


class SingularSystem(RuntimeError):
    """The vectorized Lyapunov system is rank-deficient."""


class StepSizeError(RuntimeError):
    """The explicit integrator step is too large for the drift spectrum."""


class OddDimension(ValueError):
    pass


class NonSymmetric(ValueError):
    pass


class PairingError(RuntimeError):
    """Eigenvalues of i*Omega*V could not be grouped into +/- pairs."""


class UnphysicalState(ValueError):
    """Covariance matrix violates the uncertainty principle."""


class ConfigError(ValueError):
    def __init__(self, key, message):
        super().__init__(f"{key}: {message}")
        self.key = key
