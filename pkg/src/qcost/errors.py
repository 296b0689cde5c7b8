"""Exception hierarchy for qcost."""


class QcostError(Exception):
    """Base class for all qcost errors."""


class StructureError(QcostError):
    """Malformed machine input: shape mismatch, unknown symbol, bad entry."""


class ReducibleError(QcostError):
    """The state graph is not strongly connected."""


class DefectiveSpectrumError(QcostError):
    """A nonzero eigenvalue is defective (geometric < algebraic multiplicity),
    which is beyond the almost-diagonalizable case handled here."""


class DegenerateSpectrumError(QcostError):
    """Nondegenerate first-order perturbation theory does not apply."""


class SaturatedError(QcostError):
    """The quantity saturates at finite length; no asymptotic decay exists."""


class CapacityError(QcostError):
    """A brute-force enumeration would exceed the configured size guard."""
