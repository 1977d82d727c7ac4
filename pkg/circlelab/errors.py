from typing import Optional, Dict, Any


class CircleLabError(Exception):
    """Base class of every error raised by circlelab.

    Attributes:
        stage (str): Pipeline stage that was running, if known.
        detail (str): Human readable description.
    """

    title = 'circle-lab error'

    def __init__(self, detail: str, stage: Optional[str] = None):
        super(CircleLabError, self).__init__(detail)
        self.detail = detail
        self.stage = stage

    def to_dict(self) -> Dict[str, Any]:
        error = {'title': self.title, 'detail': self.detail}
        if self.stage is not None:
            error['stage'] = self.stage

        return {'errors': [error]}


class ConfigurationError(CircleLabError):
    """The experiment configuration could not be validated.

    Attributes:
        messages (dict): Validation messages keyed by field, as produced by marshmallow.
    """
    title = 'invalid configuration'

    def __init__(self, detail: str, messages: Optional[Dict[str, Any]] = None):
        super(ConfigurationError, self).__init__(detail)
        self.messages = messages or {}


class BudgetExceededError(CircleLabError):
    """An enumeration would exceed its configured budget.

    Attributes:
        budget (int): The configured limit.
        requested (int): What the operation would have needed.
        hint (str): What to change to make the operation feasible.
    """
    title = 'budget exceeded'

    def __init__(self, what: str, budget: int, requested: int, hint: str = ''):
        detail = '{} needs {} evaluations, budget is {}'.format(what, requested, budget)
        if hint:
            detail = '{}; {}'.format(detail, hint)
        super(BudgetExceededError, self).__init__(detail)
        self.budget = budget
        self.requested = requested
        self.hint = hint


class StageError(CircleLabError):
    """Wraps an error raised inside one stage of the verification pipeline."""
    title = 'stage failed'

    def __init__(self, stage: str, cause: Exception):
        super(StageError, self).__init__('{}: {}'.format(type(cause).__name__, cause), stage=stage)
        self.cause = cause


def check_budget(what: str, requested: int, budget: int, hint: str = '') -> None:
    """Raise :class:`BudgetExceededError` if `requested` exceeds `budget`."""
    if requested > budget:
        raise BudgetExceededError(what, budget, requested, hint)
