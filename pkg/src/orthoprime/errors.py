"""Exception hierarchy.

Every error raised by the library derives from :class:`OrthoError`, and
input-validation errors are also ``ValueError`` so callers that only care
about bad input can catch that.
"""


class OrthoError(Exception):
    pass


class InputError(OrthoError, ValueError):
    pass


# hyperbolic primitives
class EllipticInput(InputError):
    pass


class IdentityInput(InputError):
    pass


class Asymptotic(InputError):
    pass


class Intersecting(InputError):
    """Two geodesics cross; the crossing point and angle are attached."""

    def __init__(self, point, angle):
        super().__init__(f"geodesics intersect at {point} with angle {angle}")
        self.point = point
        self.angle = angle


class NegativeOffset(InputError):
    pass


# surface construction
class DegenerateLength(InputError):
    pass


class ConeCuffUnsupported(InputError):
    pass


class UnknownName(InputError):
    pass


class LengthMismatch(InputError):
    pass


class SurfaceSpecError(InputError):
    pass


# collars and measures
class InadmissibleConeGrade(InputError):
    pass


class InadmissibleGrade(InputError):
    pass


class InadmissibleGrading(InputError):
    pass


class NonGeodesicShape(InputError):
    pass


class NonGeodesicBoundary(InputError):
    pass


class OutOfRange(InputError):
    pass


class ConeDomain(InputError):
    pass


class NegativeDiscriminant(InputError):
    pass


class NonpositiveLength(InputError):
    pass


class NoDomainData(InputError):
    pass


class NumericallyAmbiguous(OrthoError):
    """A distance sits within tolerance of a collar threshold."""
