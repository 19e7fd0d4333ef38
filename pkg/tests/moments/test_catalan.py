from fractions import Fraction

import pytest

from freejacobi.exceptions import DomainException
from freejacobi.moments.catalan import arcsine_moment, catalan, catalan_identity_check


def test_catalan_numbers():
	assert [catalan(n) for n in range(8)] == [1, 1, 2, 5, 14, 42, 132, 429]
	with pytest.raises(DomainException):
		catalan(-1)


def test_arcsine_moments():
	assert arcsine_moment(0) == 1
	assert arcsine_moment(1) == Fraction(1, 2)
	assert arcsine_moment(3) == Fraction(5, 16)


def test_identity_check():
	assert catalan_identity_check(15)
	assert catalan_identity_check(30)
	for n in (0, 31):
		with pytest.raises(DomainException):
			catalan_identity_check(n)
