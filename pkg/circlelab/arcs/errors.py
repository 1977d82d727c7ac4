from ..errors import CircleLabError


class ArcOverlapError(CircleLabError):
    """Two major arcs of a dissection intersect, so P lies below the disjointness threshold.

    Attributes:
        first (tuple): omega-coordinates of the first center.
        second (tuple): omega-coordinates of the second center.
        P: The scale.
    """
    title = 'major arcs overlap'

    def __init__(self, first, second, P):
        super(ArcOverlapError, self).__init__(
            'major arcs around {} and {} intersect at P={}; increase P'.format(first, second, P))
        self.first = first
        self.second = second
        self.P = P


class PreconditionError(CircleLabError):
    """A check was requested outside the range where its statement applies."""
    title = 'precondition violated'
