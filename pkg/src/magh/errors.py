"""Exception types shared across the package.

Every error carries its witness indices as attributes so callers (and the
CLI) can report exactly where a precondition failed.
"""


class MaghError(Exception):
    """Base class for all errors raised by this package."""


class MetricError(MaghError, ValueError):
    """A distance matrix violates one of the metric-space axioms."""


class NotSquare(MetricError):
    def __init__(self, rows, cols):
        super().__init__(f"matrix is not square: {rows} rows, {cols} columns")
        self.rows = rows
        self.cols = cols


class AsymmetricAt(MetricError):
    def __init__(self, i, j):
        super().__init__(f"d[{i}][{j}] != d[{j}][{i}]")
        self.i = i
        self.j = j


class NegativeOrZeroOffDiagonal(MetricError):
    def __init__(self, i, j):
        super().__init__(f"d[{i}][{j}] must be positive for distinct points")
        self.i = i
        self.j = j


class NonzeroDiagonal(MetricError):
    def __init__(self, i):
        super().__init__(f"d[{i}][{i}] must be zero")
        self.i = i


class TriangleViolation(MetricError):
    def __init__(self, i, j, k):
        super().__init__(f"d[{i}][{k}] > d[{i}][{j}] + d[{j}][{k}]")
        self.i = i
        self.j = j
        self.k = k


class NTooSmall(MaghError, ValueError):
    def __init__(self, n, minimum):
        super().__init__(f"need at least {minimum} points, got {n}")
        self.n = n
        self.minimum = minimum


class NegativeEntry(MaghError, ValueError):
    def __init__(self, i, j, value):
        super().__init__(f"entry [{i}][{j}] = {value} is negative")
        self.i = i
        self.j = j
        self.value = value


class EnumerationCapExceeded(MaghError, RuntimeError):
    def __init__(self, count, cap):
        super().__init__(
            f"enumeration would visit {count} chains, cap is {cap} "
            f"(raise the cap explicitly to proceed)"
        )
        self.count = count
        self.cap = cap


class DegreeOutOfRange(MaghError, IndexError):
    def __init__(self, degree, lo, hi):
        super().__init__(f"degree {degree} outside complex range [{lo}, {hi}]")
        self.degree = degree
        self.lo = lo
        self.hi = hi


class SamePoint(MaghError, ValueError):
    def __init__(self, index):
        super().__init__(f"need two distinct points, got index {index} twice")
        self.index = index


class NotASubcomplex(MaghError, AssertionError):
    """Boundary left a frame subcomplex basis.

    This never fires for a correct implementation; it exists so the closure
    assertion has a named, catchable failure mode.
    """

    def __init__(self, detail):
        super().__init__(detail)
        self.detail = detail
