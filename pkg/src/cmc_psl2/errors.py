"""Exception hierarchy shared by every module of the package."""


class CMCError(Exception):
    """Base class for all errors raised by cmc_psl2."""


class DomainError(CMCError, ValueError):
    """A point lies outside (or on the boundary of) the model domain."""


class InvalidIsometry(CMCError, ValueError):
    """A Moebius map is not a positive isometry of the chosen model."""


class NonFinite(CMCError, ArithmeticError):
    """A height function or its gradient returned inf or nan."""


class StepTooLarge(CMCError, ArithmeticError):
    """The Richardson error estimate of a finite-difference oracle is too big."""


class OutsideDomain(CMCError, ValueError):
    """A profile integrand was evaluated where its radicand is not positive."""


class EmptyFamily(CMCError, ValueError):
    """The parameter pair (H, d) admits no generating curve.

    The message names the violated condition, e.g. ``d<0 required for H=1/2``.
    """


class QuadratureFailure(CMCError, ArithmeticError):
    """The accumulated quadrature error estimate exceeds the tolerance."""


class InvalidH(CMCError, ValueError):
    pass


class ParamMismatch(CMCError, ValueError):
    pass


class NotNormalized(CMCError, ValueError):
    """A curve is not at height zero where it is about to be reflected."""


class EmptyMesh(CMCError, ValueError):
    pass
