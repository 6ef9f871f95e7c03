"""Exception types shared across the package."""


class RobqapError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(RobqapError):
    """Operands have incompatible sizes."""


class RangeError(RobqapError):
    """A parameter is outside its documented range."""


class AsymmetricInput(RobqapError):
    """Input matrix deviates from symmetry beyond the construction tolerance."""

    def __init__(self, i, j, value_ij, value_ji):
        self.i = i
        self.j = j
        self.value_ij = value_ij
        self.value_ji = value_ji
        super().__init__(
            f"asymmetric input: entry ({i}, {j}) = {value_ij} "
            f"vs entry ({j}, {i}) = {value_ji}"
        )


class NonzeroDiagonal(RobqapError):
    """A dissimilarity with a nonzero diagonal was passed to a metric check."""


class ReducibleMatrix(RobqapError):
    """The support graph of the matrix is disconnected.

    Carries the connected components (one-based index lists) in
    ``components``.
    """

    def __init__(self, components):
        self.components = components
        super().__init__(
            f"support graph is disconnected; components: {components}"
        )


class DegenerateSpectrum(RobqapError):
    """The second-smallest Laplacian eigenvalue is not simple."""


class RepeatedFiedlerEntries(RobqapError):
    """Two Fiedler vector entries coincide, so the sorted order is ambiguous."""


class NotRobinsonianDetected(RobqapError):
    """No ordering making the matrix Robinson was found (or validated)."""


class NotToeplitzAfterReordering(RobqapError):
    """Neither reordered matrix is Toeplitz; the closed form does not apply."""


class InstanceTooLarge(RobqapError):
    """Exhaustive enumeration was requested above the size cap."""


class PredicateFailed(RobqapError):
    """A structural precondition of the requested operation does not hold."""


class ParseError(RobqapError):
    """Malformed matrix or permutation text."""
