"""Exception taxonomy for the centroframe pipeline.

Every failure mode that callers are expected to handle gets its own class so
that batch drivers can record the error name and keep going.  All classes
derive from :class:`CentroframeError`.
"""


class CentroframeError(Exception):
    """Base class for all errors raised by this package."""


# ---------------------------------------------------------------------------
# Taylor arithmetic
# ---------------------------------------------------------------------------


class ZeroConstantTerm(CentroframeError):
    """Division by a jet whose constant term is (numerically) zero."""


class DomainError(CentroframeError):
    """Elementary function evaluated outside its real domain (e.g. sqrt of a
    jet with non-positive constant term)."""


# ---------------------------------------------------------------------------
# Surface DSL
# ---------------------------------------------------------------------------


class SurfaceSyntaxError(CentroframeError):
    """Malformed surface expression text.

    Carries ``line`` and ``column`` (1-based) of the offending token.
    """

    def __init__(self, message, line, column):
        super().__init__("%s (line %d, column %d)" % (message, line, column))
        self.line = line
        self.column = column


class UnknownIdentifier(CentroframeError):
    """Expression references a name that is neither a variable, a parameter,
    nor a known function."""


class ArityError(CentroframeError):
    """Known function called with the wrong number of arguments."""


class UnknownModel(CentroframeError):
    """Requested built-in surface or homogeneous model does not exist."""


# ---------------------------------------------------------------------------
# Linear algebra over jets
# ---------------------------------------------------------------------------


class SingularMatrix(CentroframeError):
    """Linear solve hit a pivot whose constant term is numerically zero."""


class NotPositiveDefinite(CentroframeError):
    """Symmetric 2x2 square root requested for a matrix that is not positive
    definite at the constant-term level."""


class NotIndefinite(CentroframeError):
    """Null basis requested for a symmetric 2x2 form that is not indefinite
    at the constant-term level."""


# ---------------------------------------------------------------------------
# Frame adaptation
# ---------------------------------------------------------------------------


class NotImmersed(CentroframeError):
    """The two coordinate tangent vectors are linearly dependent at the base
    point."""


class NotTransversal(CentroframeError):
    """The position vector lies in the tangent plane at the base point."""


class Degenerate(CentroframeError):
    """The three second-fundamental-form matrices fail the nondegeneracy
    determinant test."""


class IndependenceFailure(CentroframeError):
    """The pair (h3, h4) is linearly dependent, so it spans no plane."""


class NullTypeUnsupported(CentroframeError):
    """The normal plane is of Null type; the adaptation chain for this type
    is not implemented."""


class DegenerateTraceComponent(CentroframeError):
    """Space-like normalization: the pure-trace component of h0 vanishes, so
    the scaling gauge is undetermined."""


class DegenerateOffdiagComponent(CentroframeError):
    """Time-like normalization: the off-diagonal component of h0 vanishes, so
    the scaling gauge is undetermined."""


# ---------------------------------------------------------------------------
# Invariants and homogeneous models
# ---------------------------------------------------------------------------


class DegenerateCoframe(CentroframeError):
    """Model coframe is singular at the requested point (e.g. the sphere
    model at cos(v) = 0)."""


class CaseMismatch(CentroframeError):
    """Constant-invariant vector handed to a routine for the wrong surface
    type."""
