"""Exception hierarchy.

Every error raised for bad user input derives from :class:`PlasmaFlowError`
(itself a ``ValueError``), which the CLI maps to exit code 1.
"""


class PlasmaFlowError(ValueError):
    pass


class NonPositiveParameter(PlasmaFlowError):
    def __init__(self, field: str, value: float):
        self.field = field
        self.value = value
        super().__init__(f"parameter {field!r} must be positive, got {value!r}")


class FlowConstraintViolated(PlasmaFlowError):
    def __init__(self, Q1: float, alpha_Q: float, Q: float):
        self.Q1 = Q1
        self.alpha_Q = alpha_Q
        self.Q = Q
        super().__init__(
            f"flow constraint Q1 < alpha*Q < Q violated: "
            f"Q1={Q1!r}, alpha*Q={alpha_Q!r}, Q={Q!r}"
        )


class ZeroLagAfterRounding(PlasmaFlowError):
    def __init__(self, name: str, raw: float, resolution: float):
        self.name = name
        super().__init__(
            f"lag {name}={raw!r} s rounds to zero on a {resolution!r} s grid"
        )


class LagNotOnGrid(PlasmaFlowError):
    pass


class LagExceedsWindow(PlasmaFlowError):
    pass


class StabilityGuardViolated(PlasmaFlowError):
    pass


class DurationTooShort(PlasmaFlowError):
    pass


class GridMismatch(PlasmaFlowError):
    pass


class PerturbationInvalid(PlasmaFlowError):
    def __init__(self, parameter: str, cause: Exception):
        self.parameter = parameter
        super().__init__(f"perturbing {parameter!r} by +10% is invalid: {cause}")


class ConfigError(PlasmaFlowError):
    """Problem with a run configuration file; ``key`` names the culprit."""

    def __init__(self, key: str, message: str):
        self.key = key
        super().__init__(message)


class MissingKey(ConfigError):
    def __init__(self, key: str):
        super().__init__(key, f"missing required key {key!r}")


class ConfigTypeError(ConfigError, TypeError):
    def __init__(self, key: str, expected: str, value: object):
        super().__init__(key, f"key {key!r} must be {expected}, got {value!r}")


class ValidationFailed(ConfigError):
    pass


class UnknownKeys(ConfigError):
    def __init__(self, keys: list[str]):
        self.keys = keys
        super().__init__(", ".join(keys), f"unknown config keys: {', '.join(keys)}")
