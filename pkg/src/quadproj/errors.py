"""Exception hierarchy for quadproj."""


class QuadprojError(Exception):
    pass


class NotSymmetric(QuadprojError, ValueError):
    pass


class NoConvergence(QuadprojError, RuntimeError):
    pass


class ZeroQuadratic(QuadprojError, ValueError):
    pass


class UnsupportedQuadric(QuadprojError, ValueError):
    """The quadric is valid but not a nonempty non-cylindrical central one."""


class NotCentral(UnsupportedQuadric):
    pass


class Cylindrical(UnsupportedQuadric):
    pass


class ConicalDegenerate(UnsupportedQuadric):
    pass


class EmptyQuadric(UnsupportedQuadric):
    pass


class PoleEvaluation(QuadprojError, ZeroDivisionError):
    pass


class MaxIterations(QuadprojError, RuntimeError):
    pass


class ZeroNormal(QuadprojError, ValueError):
    pass


class CostGuard(QuadprojError, ValueError):
    pass


class Unsupported(QuadprojError, ValueError):
    pass


class InternalNoCandidate(QuadprojError, AssertionError):
    pass
