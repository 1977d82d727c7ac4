from ..errors import CircleLabError


class StandingAssumptionError(CircleLabError):
    """A singular locus dimension B_d is not below the number of variables.

    Attributes:
        d (int): The degree.
        B (int): The offending B_d.
        s (int): Number of variables.
    """
    title = 'B_d < s is assumed throughout'

    def __init__(self, d: int, B: int, s: int):
        super(StandingAssumptionError, self).__init__(
            'B_{} = {} but the standing assumption requires B_d < s = {}'.format(d, B, s))
        self.d = d
        self.B = B
        self.s = s


class InconclusiveDimensionError(CircleLabError):
    """The finite field point counts do not grow like a single power of q.

    Attributes:
        d (int): The degree.
        counts (dict): Point counts of the singular locus keyed by prime.
        slope (float): The fitted growth exponent, if any.
    """
    title = 'singular locus dimension is inconclusive'

    def __init__(self, d: int, counts, slope=None, reason: str = ''):
        detail = 'cannot determine B_{} from counts {}'.format(d, counts)
        if slope is not None:
            detail = '{} (fitted slope {:.3f})'.format(detail, slope)
        if reason:
            detail = '{}: {}'.format(detail, reason)
        super(InconclusiveDimensionError, self).__init__(detail + '; supply B_{} as an override'.format(d))
        self.d = d
        self.counts = counts
        self.slope = slope
