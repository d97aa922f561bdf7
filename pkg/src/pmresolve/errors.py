"""Exception hierarchy.

Every error carries enough context to be reported by the CLI; the exit code
attached to each family is what ``pmresolve`` returns on failure.
"""


class ResolveError(Exception):
    exit_code = 5


class SchemaError(ResolveError):
    """Malformed input file."""

    exit_code = 2

    def __init__(self, message, field=None, line=None):
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)


class ValidationError(ResolveError):
    """The input complex is not an oriented pseudo-manifold."""

    exit_code = 3


class RidgeDegreeViolation(ValidationError):
    pass


class NotStronglyConnected(ValidationError):
    pass


class NonOrientable(ValidationError):
    pass


class FaceNotPresent(ValidationError):
    pass


class NotNested(ValidationError):
    pass


class NotProperColoring(ValidationError):
    pass


class WrongColorCount(ValidationError):
    pass


class CapExceeded(ResolveError):
    """State exploration hit the configured cap.

    ``partial`` holds the explored prefix (a ``Component`` whose neighbour
    table may reference unexplored states as -1).
    """

    exit_code = 4

    def __init__(self, cap, partial=None):
        self.cap = cap
        self.partial = partial
        super().__init__(f"state cap {cap} exceeded")


class InvariantFailure(ResolveError):
    """A check guaranteed by the construction failed; treated as a bug."""

    exit_code = 5


class LabelingError(InvariantFailure):
    pass


class NoSuchFace(LabelingError):
    pass


class NotUnique(LabelingError):
    pass


class NotBipartite(LabelingError):
    pass


class UnbalancedColors(LabelingError):
    pass


class DiamondViolation(InvariantFailure):
    pass


class PairingBroken(InvariantFailure):
    pass


class NonOrientableQuotient(InvariantFailure):
    pass


class InconsistentDegree(InvariantFailure):
    pass


class NotBalanced(ResolveError):
    exit_code = 3

    def __init__(self, message, counts=None):
        self.counts = counts or {}
        super().__init__(message)


class PatternMismatch(ResolveError):
    exit_code = 3

    def __init__(self, message, report=None):
        self.report = report
        super().__init__(message)
