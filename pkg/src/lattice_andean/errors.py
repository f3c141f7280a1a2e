"""Exception types shared across the package.

The CLI maps these onto exit codes: input problems exit 2, exhausted
exploration budgets exit 3.
"""


class LatticeAndeanError(Exception):
    """Base class for all package errors."""


class InputError(LatticeAndeanError):
    """Base class for errors caused by bad user input (CLI exit code 2)."""


class BudgetError(LatticeAndeanError):
    """Base class for exhausted exploration budgets (CLI exit code 3)."""


class MalformedInput(InputError):
    """Matrix text could not be parsed (non-integer token, ragged rows, ...)."""


class RankDeficient(InputError):
    """An integer matrix does not have the required rank."""


class OrientationError(InputError):
    """A 2x2 matrix does not have the required sign pattern (row one in the
    open positive quadrant, row two in the open negative quadrant)."""


class NotMonomialPrime(InputError):
    """The requested row pair does not lie in opposite open quadrants."""


class NotToral(InputError):
    """The requested row pair is linearly dependent, hence not toral."""


class NotAndean(InputError):
    """The requested row pair is not dependent-and-opposite, hence not Andean."""


class NotALeftTurn(InputError):
    """The starting vertex of a turn chase is not a left turn."""


class EmptySlice(InputError):
    """The requested slice of the nonnegative octant contains no lattice point."""


class InvalidA(InputError):
    """A purported grading matrix fails its invariants (A*B = 0 and unit
    elementary divisors)."""


class NoSolution(InputError):
    """An exact linear system that should be solvable is not; signals an
    invalid grading matrix, never a valid input."""


class CapExceeded(BudgetError):
    """A breadth-first search exceeded its safety cap."""


class WindowTooLarge(BudgetError):
    """A lattice window exceeds the vertex budget."""


class NoStabilization(BudgetError):
    """Window growth exhausted its budget before certificates stabilized."""
