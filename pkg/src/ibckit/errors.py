"""Exception taxonomy for the toolkit.

Protocol-level failures (IntegrityFailure etc.) all derive from ProtocolError
so callers can treat "the exchange failed" uniformly; wire-format problems
derive from DecodeError.
"""


class IbcError(Exception):
    """Base class for all toolkit errors."""


# --- field layer ---

class MismatchedField(IbcError):
    """Operands belong to different fields."""


class NonInvertible(IbcError):
    """Multiplicative inverse of zero requested."""


class NonResidue(IbcError):
    """Square root requested of a quadratic non-residue."""


# --- polynomial layer ---

class WrongDegree(IbcError):
    """Polynomial degree outside the operation's contract."""


class DegenerateRoots(IbcError):
    """Transmitted roots coincide, so the hidden root is unconstrained."""


class ZeroDiscriminant(IbcError):
    """A zero discriminant admits no distinct-root solution."""


class InternalError(IbcError):
    """A randomized retry loop exceeded its cap (overwhelmingly improbable)."""


# --- projective / cross-ratio layer ---

class DegenerateQuadruple(IbcError):
    """Cross-ratio undefined: a denominator difference vanishes."""


class DegenerateDenominator(IbcError):
    """The fourth-point equation is unsolvable for these inputs."""


class DistinctnessViolation(IbcError):
    """Points that must be pairwise distinct are not."""


# --- codec layer ---

class UnknownTag(IbcError):
    """Hash derivation requested under an unregistered domain tag."""


class DecodeError(IbcError):
    """Base class for wire-format decoding failures."""


class BadMagic(DecodeError):
    pass


class BadVersion(DecodeError):
    pass


class UnknownType(DecodeError):
    pass


class Truncated(DecodeError):
    pass


class MalformedMessage(DecodeError):
    """Structurally invalid message (bad field count, size, or value)."""


# --- protocol layer ---

class ProtocolError(IbcError):
    """Base class for failures of a running exchange."""


class IntegrityFailure(ProtocolError):
    """A binding hash tag did not verify."""


class NoCandidateRoot(ProtocolError):
    """The discriminant identity admits no hidden-root candidate."""


class NoShiftSolution(ProtocolError):
    """No offset satisfies the shifted-evaluation equation."""


class AmbiguousAuth(ProtocolError):
    """The auth tag did not single out exactly one offset."""


class AmbiguousInit(ProtocolError):
    """Session init could not commit to a unique shared root."""


class SamplingFailure(ProtocolError):
    """Constrained triple sampling exceeded its retry cap."""


class UninitializedSession(ProtocolError):
    """Streaming requested before the shared root was established."""


# --- applications ---

class NoSolution(IbcError):
    """Exhaustive puzzle scan found no verifying witness."""
