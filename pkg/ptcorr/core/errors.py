class PtcorrError(Exception):
    """Base class of every error raised by ptcorr.

    Deliberately not a ValueError: pydantic validators let these propagate as-is.
    """


# ===== Linear algebra / states =====


class NonHermitianInput(PtcorrError):
    pass


class NotPSD(PtcorrError):
    pass


class NonSymmetric(PtcorrError):
    pass


class InvalidState(PtcorrError):
    pass


# ===== Physics =====


class NonpositiveTemperature(PtcorrError):
    pass


class NonXState(PtcorrError):
    pass


class BrokenPhase(PtcorrError):
    """|phi| >= pi/2: outside the unbroken PT phase."""


class DegenerateNormalization(PtcorrError):
    pass


class InternalConsistencyError(PtcorrError):
    """Two independent routes to the same quantity disagree."""


# ===== Sweep / CLI =====


class InvalidRange(PtcorrError):
    pass


class ConfigError(PtcorrError):
    pass


class OutputError(PtcorrError):
    """Writing an output artifact failed."""
