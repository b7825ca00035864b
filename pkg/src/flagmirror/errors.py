"""Exception types shared across the package.

Every failure mode that callers are expected to catch gets its own class so
tests can assert on the exact condition rather than matching message strings.
"""


class FlagMirrorError(Exception):
    """Base class for all package-specific errors."""


# ---------------------------------------------------------------- scalars ---

class UnknownValuation(FlagMirrorError):
    """A truncated Puiseux series has no visible term, so its valuation
    (or sign) cannot be determined from the known part."""


class DivisionByZero(FlagMirrorError, ZeroDivisionError):
    """Exact division by something provably zero."""


class TruncationRequired(FlagMirrorError):
    """Series division with an infinite expansion needs an explicit
    truncation order, and none could be inferred from the operands."""


class NotSubtractionFree(FlagMirrorError):
    """Tropicalization was asked for an expression whose canonical form has
    a negative coefficient."""


class NonMonomialDenominator(FlagMirrorError):
    """Tropicalization requires the canonical denominator to be a single
    monomial."""


# ------------------------------------------------------------------- weyl ---

class NotReduced(FlagMirrorError):
    """A word in the simple reflections is not a reduced expression."""


class DifferentTargets(FlagMirrorError):
    """Two words claimed to be braid-connected express different group
    elements."""


class InvalidIndex(FlagMirrorError):
    """A simple-reflection or root index is out of range for the given n."""


# --------------------------------------------------------------- matrices ---

class SizeMismatch(FlagMirrorError):
    """Matrix dimensions (or index-set sizes) are incompatible."""


class SingularMatrix(FlagMirrorError):
    """Exact inversion hit a non-invertible matrix."""


class SingularPrincipalMinor(FlagMirrorError):
    """LDU factorization without pivoting failed: the k-th leading principal
    minor vanishes.  The failing size is stored in ``self.k``."""

    def __init__(self, k, message=None):
        self.k = k
        super().__init__(message or f"leading principal {k} x {k} minor is zero")


# ----------------------------------------------------------------- charts ---

class WordNotSupported(FlagMirrorError):
    """The requested operation is only implemented for a specific reduced
    word (or family of words)."""


class InvalidMove(FlagMirrorError):
    """A braid move was requested at a position where the word does not
    support it."""


class ZeroChamberMinor(FlagMirrorError):
    """A chamber minor entering a coordinate quotient vanishes, so the
    chamber-ansatz coordinates are undefined at this point."""


# ----------------------------------------------------------------- quiver ---

class InconsistentBoxRelations(FlagMirrorError):
    """Arrow values do not satisfy the box relations / cannot be derived
    from a single vertex potential."""


class PreconditionViolated(FlagMirrorError):
    """A check that only makes sense at a critical point (or under some
    other stated precondition) was invoked where the precondition fails."""


# --------------------------------------------------------------- tropical ---

class NoSolution(FlagMirrorError):
    """No ideal filling matches the requested weight."""


class NonDominant(FlagMirrorError):
    """The weight is not dominant for the given parabolic."""


class UnboundedOrEmpty(FlagMirrorError):
    """Vertex enumeration was asked for a polyhedron that is empty or has a
    nontrivial recession cone."""


# --------------------------------------------------------------- toeplitz ---

class TruncationInsufficient(FlagMirrorError):
    """Entries agree on their known range but are truncated, so equality
    cannot be certified exactly."""


class NonPositive(FlagMirrorError):
    """A series that must have positive leading coefficient does not."""


class ZeroMinor(FlagMirrorError):
    """A minor in a coordinate-recovery quotient vanishes."""


class NoConvergence(FlagMirrorError):
    """The damped Newton iteration failed to converge."""
