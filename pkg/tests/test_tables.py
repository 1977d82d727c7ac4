import numpy as np
import pytest

from circlelab.polys import IntPolynomial
from circlelab.tables import ValueTable, aggregate, value_table, convolve, convolve_all, zero_count, match_count


@pytest.fixture(scope='module')
def squares() -> ValueTable:
    """x^2 for |x| <= 2"""
    return value_table([IntPolynomial.from_dict(1, {(2,): 1})], [(-2, 2)])


class TestValueTable:

    def test_multiplicities(self, squares: ValueTable):
        assert squares.keys[:, 0].tolist() == [0, 1, 4]
        assert squares.counts.tolist() == [1, 2, 2]
        assert squares.total == 5

    def test_aggregate(self):
        table = aggregate(np.array([[1, 2], [0, 0], [1, 2]]), np.array([1, 1, 3]))
        assert table.keys.tolist() == [[0, 0], [1, 2]]
        assert table.counts.tolist() == [1, 4]

    def test_empty_range(self):
        table = value_table([IntPolynomial.from_dict(1, {(1,): 1})], [(1, 0)])
        assert table.size == 0

    def test_chunks_do_not_matter(self):
        polys = [IntPolynomial.from_dict(2, {(1, 1): 1}), IntPolynomial.from_dict(2, {(0, 2): 1})]
        whole = value_table(polys, [(-3, 3), (-3, 3)])
        chunked = value_table(polys, [(-3, 3), (-3, 3)], chunk_size=5, threads=3)
        assert whole.keys.tolist() == chunked.keys.tolist()
        assert whole.counts.tolist() == chunked.counts.tolist()


class TestCombine:

    def test_sum_of_two_squares(self, squares: ValueTable):
        both = convolve(squares, squares)
        assert both.total == 25
        assert zero_count(both) == 1
        assert dict(zip(both.keys[:, 0].tolist(), both.counts.tolist()))[5] == 8

    def test_match(self, squares: ValueTable):
        """pairs with x^2 = y^2"""
        assert match_count(squares, squares.negated()) == 9

    def test_vector_values(self):
        pair = value_table([IntPolynomial.from_dict(1, {(1,): 1}), IntPolynomial.from_dict(1, {(2,): 1})],
                           [(-1, 1)])
        result = convolve_all([pair, pair, pair])
        assert result.total == 27
        assert zero_count(result) == 1

    def test_width_mismatch(self, squares: ValueTable):
        pair = value_table([IntPolynomial.from_dict(1, {(1,): 1})] * 2, [(0, 1)])
        with pytest.raises(ValueError):
            convolve(squares, pair)
