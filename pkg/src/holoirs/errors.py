"""Exception hierarchy shared by the library and the CLI."""


class HoloIRSError(Exception):
    """Base class; ``exit_code`` is what the CLI returns for it."""

    exit_code = 1
    tag = "error"


class ScenarioParseError(HoloIRSError, ValueError):
    exit_code = 2
    tag = "parse"


class DomainError(HoloIRSError, ValueError):
    """Geometry or parameter outside the model's domain of validity."""

    exit_code = 3
    tag = "domain"


class ResolutionError(HoloIRSError, RuntimeError):
    """Quadrature grid required by the phase-resolution rule exceeds the budget."""

    exit_code = 4
    tag = "resolution"
