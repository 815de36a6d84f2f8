"""Exception types shared across solver modules."""


class SolverError(RuntimeError):
    """Base class for numerical-solver failures."""


class BracketError(SolverError):
    """Energy bracket does not isolate the requested eigenvalue."""


class ConvergenceError(SolverError):
    """Iteration budget exhausted before reaching tolerance."""


class GridMismatchError(ValueError):
    """Operands were sampled on different grids."""


class GridTooCoarseError(ValueError):
    """Finite-difference grid cannot support the requested accuracy."""
