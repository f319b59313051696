"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class EnriquesError(Exception):
    """Base class for all package errors."""


class PreconditionError(EnriquesError, ValueError):
    """An operation was called outside its documented domain."""


# lattice layer

class LatticeError(EnriquesError):
    pass


class LatticeMismatch(LatticeError):
    """Two vectors (or a vector and a lattice) do not share a lattice."""


class SingularMatrix(LatticeError):
    pass


class DegenerateLattice(LatticeError):
    pass


class NotEven(LatticeError):
    pass


class NotDefinite(LatticeError):
    pass


class NotRootGenerated(LatticeError):
    pass


class NotMinusTwo(LatticeError):
    pass


class NotIsometric(LatticeError):
    pass


class DuplicateEdge(LatticeError):
    pass


class SelfLoop(LatticeError):
    pass


class NotFound(EnriquesError):
    """A bounded search came back empty.

    This is advisory only: the search space was a finite box, so the
    absence of a hit is not a proof of nonexistence.
    """

    def __init__(self, message: str, box: int | None = None, frame: str | None = None):
        if box is not None:
            message = f"{message} (box {box}, frame {frame or 'basis'} exhausted)"
        super().__init__(message)
        self.box = box
        self.frame = frame


class NotUnique(EnriquesError):
    def __init__(self, message: str, found: list | None = None):
        super().__init__(message)
        self.found = list(found or [])


# isotropic sequences

class SequenceViolation(EnriquesError):
    """Aggregated report of everything wrong with a candidate sequence.

    ``violations`` holds :class:`~enriques_nd.isotropic.Violation` records.
    """

    def __init__(self, violations):
        self.violations = tuple(violations)
        text = "; ".join(str(v) for v in self.violations)
        super().__init__(f"invalid isotropic sequence: {text}")

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}


class WrongLength(EnriquesError):
    pass


class NotDivisible(EnriquesError):
    pass


class O1Mukai(EnriquesError):
    """A length-9 sequence in the extensible orbit cannot define a Mukai vector."""


class InternalInconsistency(EnriquesError):
    pass


class EmptyCandidates(EnriquesError):
    pass


# models and enumeration

class SchemaError(EnriquesError):
    def __init__(self, message: str, field: str | None = None, line: int | None = None):
        where = []
        if field:
            where.append(f"field {field}")
        if line is not None:
            where.append(f"line {line}")
        if where:
            message = f"{message} [{', '.join(where)}]"
        super().__init__(message)
        self.field = field
        self.line = line


class OrbitCapExceeded(EnriquesError):
    pass


class EmptyEnumeration(EnriquesError):
    pass


class CertificateFailure(EnriquesError):
    def __init__(self, message: str, uncertified=(), diagnostics=()):
        super().__init__(message)
        self.uncertified = list(uncertified)
        self.diagnostics = list(diagnostics)
