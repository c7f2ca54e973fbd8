"""Exception types raised by spiralkit.

Everything derives from SpiralkitError so callers can catch the library
as a whole.  Solvers distinguish clean infeasibility (the input scene
violates a feasibility condition) from numerical failures (bracketing,
convergence) and from internal construction checks that should never
trip on valid input.
"""

from __future__ import annotations


class SpiralkitError(Exception):
    """Base class for all spiralkit errors."""


class DomainError(SpiralkitError):
    """A parameter lies outside its documented domain."""


class SingularityError(SpiralkitError):
    """Curve evaluation hit a (near-)zero first derivative."""


class InfeasibleError(SpiralkitError):
    """The scene violates a feasibility condition.

    The message states the violated condition in terms of the scene
    quantities, e.g. "needs r0 + r1 < ||C1 - C0||".
    """


class BracketingError(SpiralkitError):
    """No sign change found while scanning for a root bracket."""


class ConvergenceError(SpiralkitError):
    """Root refinement exceeded its iteration budget."""


class ConstructionError(SpiralkitError):
    """A built object failed its own consistency checks.

    Raised when post-construction residuals exceed tolerance; on valid
    input this indicates a bug, not a property of the scene.
    """


class RenderError(SpiralkitError):
    """Nothing renderable (e.g. a result with zero feasible entries)."""


class SceneError(SpiralkitError):
    """A scene or result document failed to parse or validate.

    Carries a stable machine-readable ``code`` and a JSON-path-ish
    ``path`` locating the offending field.
    """

    def __init__(self, message: str, code: str = "invalid", path: str = "$"):
        super().__init__(message)
        self.code = code
        self.path = path
