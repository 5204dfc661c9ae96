"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Invalid model parameters or configuration values."""


class HypothesisViolated(ValueError):
    """A criterion was invoked outside its hypotheses (e.g. nonpositive cubic coefficients)."""


class DegenerateDiffusion(ValueError):
    """Operation requires at least one positive diffusion coefficient."""


class NoWaveTrain(RuntimeError):
    """No wave train exists: the stability discriminant is nonnegative."""


class VarsigmaOutOfRange(ValueError):
    """Competition strength varsigma must lie strictly between 0 and epsilon."""


class CFLViolation(RuntimeError):
    """Requested time step exceeds the explicit diffusion stability bound."""


class StepFailure(RuntimeError):
    """Adaptive integrator failed to advance (step size underflow)."""


class SlowDecay(RuntimeError):
    """Kernel does not decay fast enough to truncate its moment integrals."""


class CFLWarning(UserWarning):
    """Time step was clamped down to the diffusion stability bound."""


class DefectiveMatrixWarning(UserWarning):
    """Eigenbasis ill-conditioned; fell back to a dense matrix exponential."""
