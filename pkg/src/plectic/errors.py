"""Exception hierarchy shared by every module."""


class PlecticError(Exception):
    """Base class for all library errors."""


# arithmetic
class CancellationError(PlecticError, ArithmeticError):
    pass


class PrimeMismatch(PlecticError, ValueError):
    pass


class DivisionByZero(PlecticError, ZeroDivisionError):
    pass


class RamifiedUnsupported(PlecticError, NotImplementedError):
    pass


class NotASquare(PlecticError, ValueError):
    pass


# projective geometry
class PoleError(PlecticError, ZeroDivisionError):
    pass


class NotHyperbolic(PlecticError, ValueError):
    pass


class SingularMatrix(PlecticError, ValueError):
    pass


# tree
class RationalPoint(PlecticError, ValueError):
    """The point lies on the boundary, not in the interior of the tree."""


class RamifiedMidpoint(PlecticError, ValueError):
    """The point reduces to the midpoint of an edge."""


class NotAnEdge(PlecticError, ValueError):
    pass


# groups
class ConfigError(PlecticError, ValueError):
    pass


class CertificationError(PlecticError):
    """A ping-pong certificate could not be established."""


class UnsupportedGroupShape(PlecticError, ValueError):
    pass


class NotTransitive(PlecticError, ValueError):
    pass


class NotFound(PlecticError, LookupError):
    pass


# measures
class DepthInsufficient(PlecticError, ValueError):
    pass


class RankMismatch(PlecticError):
    pass


class BallTooDeep(PlecticError, ValueError):
    pass


# integration and jacobians
class NonStabilized(PlecticError):
    """Riemann products did not settle to the requested number of digits."""


class NonElementary(PlecticError, ValueError):
    pass


class PrecisionInsufficient(PlecticError):
    pass


class NonPrimitiveCharacter(PlecticError, ValueError):
    pass


# hecke
class NotASubgroup(PlecticError, ValueError):
    pass


class BoundExhausted(PlecticError):
    pass


class PointCollision(PlecticError, ValueError):
    pass
