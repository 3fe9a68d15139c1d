"""Exception types shared across the package."""


class QQWalkError(Exception):
    """Base class for all package-specific errors."""


class NotUnitaryError(QQWalkError):
    """A coin matrix violates one of the 2x2 unitarity relations.

    `relation` names the failed relation, `residual` is its magnitude.
    """

    def __init__(self, relation: str, residual: float):
        self.relation = relation
        self.residual = residual
        super().__init__(f"coin is not unitary: {relation} residual {residual:.3e}")


class NotNormalizedError(QQWalkError):
    """An initial spinor does not satisfy |alpha|^2 + |beta|^2 = 1."""


class DomainError(QQWalkError):
    """Inputs are outside the domain of validity of a closed form."""


class TooLargeError(QQWalkError):
    """A brute-force enumeration was requested beyond its combinatorial bound."""


class DegenerateError(QQWalkError):
    """Two eigenvalues coincide at this momentum; the node must be excluded."""

    def __init__(self, theta: float):
        self.theta = theta
        super().__init__(f"degenerate spectrum at theta={theta!r}")


class DegenerateABError(QQWalkError):
    """The eigenvector construction breaks down (A*B vanishes) at this node."""
