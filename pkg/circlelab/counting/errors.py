from ..errors import CircleLabError


class NonSeparableSystemError(CircleLabError):
    """A monomial uses variables from both sides of a meet-in-the-middle split.

    Attributes:
        polynomial (tuple): (d, i, j) of the Weil restricted polynomial containing the monomial.
        monomial (tuple): Exponent vector over the ns integer variables.
    """
    title = 'system does not separate over the split'

    def __init__(self, polynomial, monomial):
        super(NonSeparableSystemError, self).__init__(
            'monomial {} of G*{} mixes left and right variables'.format(_render(monomial), polynomial))
        self.polynomial = polynomial
        self.monomial = monomial


class InvalidJobError(CircleLabError):
    """A count job has an invalid scale, box or split."""
    title = 'invalid count job'


def _render(exponent) -> str:
    factors = []
    for v, k in enumerate(exponent):
        if k == 1:
            factors.append('X{}'.format(v + 1))
        elif k:
            factors.append('X{}^{}'.format(v + 1, k))
    return '*'.join(factors) or '1'
