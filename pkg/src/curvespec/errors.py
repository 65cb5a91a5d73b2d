"""Exception types shared across the package."""


class CurveSpecError(Exception):
    """Base class for all curvespec errors."""


class ComboError(CurveSpecError, ValueError):
    """Malformed spectrum or spectral-pair combination."""


class GraphValidationError(CurveSpecError, ValueError):
    """A decorated resolution graph violates a structural invariant.

    Carries the full list of diagnostics so callers can report every
    violated invariant at once.
    """

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(self.diagnostics))


class GraphStructureError(CurveSpecError, ValueError):
    """A graph is valid but outside the family an operation supports."""


class NonIntegralSpectrumError(CurveSpecError, ArithmeticError):
    """Summed spectral coefficients failed to be integers.

    The per-divisor coefficients are rationals; their totals are integers
    exactly when the decorated tree is consistent with an actual embedded
    resolution.  A non-integral total therefore flags the input, not a
    rounding problem.
    """


class DecompositionError(CurveSpecError):
    """A spectrum or graph could not be decomposed as requested."""


class AmbiguousMultiplicityError(DecompositionError):
    """Multiplicity recovery found cancelling weights and refuses to guess."""


class DiagramError(CurveSpecError, ValueError):
    """Malformed or non-convenient Newton diagram."""


class ExpressionError(CurveSpecError, ValueError):
    """Unparseable type expression."""
