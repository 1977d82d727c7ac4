from ..errors import CircleLabError


class NotMonicError(CircleLabError):
    """The minimal polynomial does not have leading coefficient 1."""
    title = 'polynomial is not monic'


class ReduciblePolynomialError(CircleLabError):
    """The minimal polynomial factors over the integers.

    Attributes:
        factor (str): A nontrivial factor that was found.
    """
    title = 'polynomial is reducible'

    def __init__(self, factor: str):
        super(ReduciblePolynomialError, self).__init__('minimal polynomial has the factor {}'.format(factor))
        self.factor = factor


class NonMonogenicError(CircleLabError):
    """Z[theta] is not the maximal order and no explicit basis was supplied.

    Attributes:
        p (int): A prime dividing the index [O_K : Z[theta]].
    """
    title = 'ring of integers is not monogenic'

    def __init__(self, p: int):
        super(NonMonogenicError, self).__init__(
            'Z[theta] is not maximal at p={}; supply an explicit integral basis in the field config '
            '(its multiplication table is derived and checked)'.format(p))
        self.p = p


class BasisError(CircleLabError):
    """A supplied basis is singular or not closed under multiplication."""
    title = 'invalid basis'


class FieldConsistencyError(CircleLabError):
    """Embeddings, trace matrix and multiplication table disagree."""
    title = 'inconsistent field data'


class UnsupportedPrimeError(CircleLabError):
    """The prime divides the index of Z[theta] and cannot be factored by Kummer-Dedekind.

    Attributes:
        p (int): The rejected prime.
        index (int): The index [O_K : Z[theta]].
    """
    title = 'unsupported prime'

    def __init__(self, p: int, index: int):
        super(UnsupportedPrimeError, self).__init__(
            'p={} divides the index [O_K : Z[theta]] = {}'.format(p, index))
        self.p = p
        self.index = index


class NonIntegralIdealError(CircleLabError):
    """A lattice used as an integral ideal is not closed under multiplication by O_K."""
    title = 'not an integral ideal'
