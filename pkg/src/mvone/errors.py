"""Exceptions for mathematically detected negative outcomes.

These are answers, not crashes: the CLI maps every ``MathematicalNegative``
to exit code 2.
"""


class MathematicalNegative(Exception):
    """Base class for results such as "mixed volume is not 1"."""


class ZeroMixedVolume(MathematicalNegative):
    def __init__(self, witness):
        self.witness = tuple(witness)
        super().__init__(f"mixed volume is 0; deficient subtuple {list(self.witness)}")


class NotEssential(MathematicalNegative):
    def __init__(self, message="tuple is not essential"):
        super().__init__(message)


class NotMixedVolumeOne(MathematicalNegative):
    def __init__(self, stage: str, detail: str = ""):
        self.stage = stage
        self.detail = detail
        msg = f"mixed volume is not 1 (failed at {stage})"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class MixedVolumeExceedsOne(MathematicalNegative):
    def __init__(self, mixed_volume=None):
        self.mixed_volume = mixed_volume
        msg = "mixed volume exceeds 1"
        if mixed_volume is not None:
            msg += f" (it is {mixed_volume})"
        super().__init__(msg)


class NoLift(MathematicalNegative):
    """No fiber translations put the lifted tuple into a volume 1 simplex."""


class SingularBlock(MathematicalNegative):
    """A linear block of the cascade is singular: coefficients are not generic."""


class ZeroCoordinate(MathematicalNegative):
    """The solution leaves the torus: coefficients are not generic."""
