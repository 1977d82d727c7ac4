from ..errors import CircleLabError


class SystemSyntaxError(CircleLabError):
    """The system text could not be parsed."""
    title = 'invalid system text'


class DegreeMismatchError(CircleLabError):
    """The parsed degrees disagree with the declared degree profile.

    Attributes:
        declared: The declared profile or top degree.
        found (tuple): The degree profile (t_1, ..., t_D) of the parsed system.
    """
    title = 'degree mismatch'

    def __init__(self, declared, found):
        super(DegreeMismatchError, self).__init__('degree mismatch: declared {}, found {}'.format(declared, found))
        self.declared = declared
        self.found = found


class EmptyDegreeSlotError(CircleLabError):
    """The declared profile has t_D = 0."""
    title = 'empty top degree'


class ZeroLeadingFormError(CircleLabError):
    """A polynomial is constant, so it has no nonzero leading form of positive degree."""
    title = 'zero leading form'


class DimensionMismatchError(CircleLabError):
    """A point has the wrong number of coordinates."""
    title = 'dimension mismatch'


class PolarArityError(CircleLabError):
    """The number of slots passed to a polar form differs from its degree."""
    title = 'wrong polar slot count'


class BoxError(CircleLabError):
    """Box bounds are not ordered or leave [-1, 1]."""
    title = 'invalid box'
