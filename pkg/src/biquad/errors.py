"""Exception hierarchy shared by every stage of the pipeline."""


class BiquadError(Exception):
    pass


class DomainError(BiquadError, ValueError):
    """An input outside the operation's domain (negative root, empty list, ...)."""


class DegenerateParameter(DomainError):
    """The curve parameter makes E(h) singular (h in {0, 1, -1})."""

    def __init__(self, h, reason):
        self.h = h
        self.reason = reason
        super().__init__(f"degenerate parameter h={h}: {reason}")


class DegeneratePoint(DomainError):
    """A point that cannot yield a solution (infinity, or Y = 0 which forces m = 0)."""


class TrivialQuadruple(BiquadError):
    """Substitution produced a zero component in (A, B, C, D)."""


class TrivialIdentity(BiquadError):
    """Both sides of an expanded identity coincide as multisets."""


class InconsistentWeights(DomainError):
    """A weighting or decomposition does not match the quadruple's h."""


class DataIntegrityError(BiquadError):
    """Shipped or user data failed validation on load."""


class PointNotFound(BiquadError):
    """No usable curve point was found under the given bounds."""
