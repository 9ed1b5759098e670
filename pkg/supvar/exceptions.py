"""Error hierarchy shared by the kernel, the management commands and the API.

Every error carries the process exit code the command surface reports.
"""


class SupvarError(Exception):
    exit_code = 1
    status = 'fail'

    def __init__(self, message, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def as_dict(self):
        payload = {'error': type(self).__name__, 'message': self.message}
        payload.update(self.details)
        return payload


class InvalidInput(SupvarError, ValueError):
    """Bad family/parameter combination, shape mismatch or mixed fields."""
    exit_code = 3
    status = 'invalid'


class CheckFailed(SupvarError):
    """A mathematical check failed; `details['witness']` names where."""
    exit_code = 1
    status = 'fail'


class InconsistentSystem(CheckFailed):
    """A linear system that has to be solvable is not."""


class BudgetExceeded(SupvarError):
    exit_code = 2
    status = 'budget'

    def __init__(self, message, estimate=None, budget=None, **details):
        super().__init__(message, estimate=estimate, budget=budget, **details)
        self.estimate = estimate
        self.budget = budget


class DegreeCapReached(BudgetExceeded):
    """A degree-bounded computation stopped before it was certified."""
