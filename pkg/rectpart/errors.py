"""Exception hierarchy shared by the solvers and the command line.

Every error carries the process exit code the CLI maps it to.
"""


class RectPartError(Exception):
    exit_code = 1


#############################
# INPUT ERRORS (exit 2)
#############################

class InvalidInput(RectPartError):
    exit_code = 2

    def __init__(self, message, errors=None):
        super().__init__(message)
        self.errors = list(errors or [])


class InvalidKey(RectPartError):
    exit_code = 2


class PointOnBoundary(RectPartError):
    exit_code = 2


class BadParams(RectPartError):
    exit_code = 2


class NotPlanar(RectPartError):
    exit_code = 2


class UnsatisfiedClause(RectPartError):
    exit_code = 2

    def __init__(self, clause_index, clause):
        super().__init__(f"clause {clause_index} {tuple(clause)} is not satisfied")
        self.clause_index = clause_index
        self.clause = tuple(clause)


#############################
# LIMIT ERRORS (exit 3)
#############################

class SizeLimitExceeded(RectPartError):
    exit_code = 3


class CapacityExceeded(RectPartError):
    exit_code = 3


#############################
# INTERNAL ERRORS (exit 1)
#############################

class UnsolvedDependency(RectPartError):
    """A value was read before the DP produced it."""


class CycleDetected(RectPartError):
    """Reconstruction revisited a subpolygon."""


class GadgetConflict(RectPartError):
    """Gadget tiles touch without a link, or hole states break a gadget rule."""
