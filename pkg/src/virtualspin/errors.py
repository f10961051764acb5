"""Exception types shared across the package."""


class VirtualSpinError(Exception):
    """Base class for all virtualspin errors."""


class InputError(VirtualSpinError, ValueError):
    """Invalid user input: bad parameters, malformed gate strings or files."""


class GateGrammarError(InputError):
    """Gate string does not match the KIND:CONTROLS->TARGET grammar."""


class ScheduleFormatError(InputError):
    """Schedule file is not a valid serialized pulse schedule."""


class OverlappingTonesError(InputError):
    """Simultaneous tones address overlapping level pairs."""


class ForbiddenTransitionError(VirtualSpinError):
    """Transition matrix element is zero: a rotation would take infinite time."""


class AmbiguousLabelingError(VirtualSpinError):
    """Eigenvector overlap matching cannot assign unique level labels
    (level crossing / strong mixing regime)."""


class ResolutionError(VirtualSpinError):
    """Time integration would under-resolve the shortest oscillation period."""


class DegenerateFitError(VirtualSpinError):
    """Scaling fit is degenerate: all matrix elements numerically zero."""


class TruthTableError(VirtualSpinError):
    """A compiled propagator column is not a pure basis vector."""
