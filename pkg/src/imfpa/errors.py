"""Exception types raised across the package."""


class ModelError(ValueError):
    """Base class for invalid model specifications."""

    def __init__(self, message, term=None):
        super().__init__(message)
        self.term = term


class MalformedTermError(ModelError):
    pass


class CardinalityError(ModelError):
    pass


class ParameterCountError(ModelError):
    pass


class StrengthError(ModelError):
    pass


class GenerationError(RuntimeError):
    """Base class for failures while building a suite."""


class CapacityError(GenerationError):
    """The tuple universe does not fit in the configured memory budget."""


class StallError(GenerationError):
    """Too many consecutive searches found no test covering a new tuple."""


class RunError(GenerationError):
    """A failure inside one run of a multi-run experiment."""

    def __init__(self, run_index, seed, cause):
        super().__init__(f"run {run_index} (seed {seed}) failed: {cause}")
        self.run_index = run_index
        self.seed = seed
        self.cause = cause
