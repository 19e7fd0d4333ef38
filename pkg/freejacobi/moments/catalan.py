from fractions import Fraction
from math import comb
from typing import List

from freejacobi.exceptions import DomainException

MAX_CHECK_ORDER = 30


def catalan(n: int) -> int:
	if n < 0:
		raise DomainException('Catalan index must be nonnegative, got {}'.format(n))
	return comb(2 * n, n) // (n + 1)


def arcsine_moment(n: int) -> Fraction:
	"""
	m_n = C(2n, n) / 4^n, the moments of Beta(1/2, 1/2)

	The gamma form of this moment is Gamma(n + 1/2) / (sqrt(pi) n!)
	"""
	if n < 0:
		raise DomainException('Moment index must be nonnegative, got {}'.format(n))
	return Fraction(comb(2 * n, n), 4 ** n)


def arcsine_moments(n: int) -> List[Fraction]:
	return [arcsine_moment(i) for i in range(n + 1)]


def catalan_identity_check(n: int) -> bool:
	"""
	Exact checks up to order n of D_j = sum_(k=1..j) D_(j-k) D_(k-1) and of the stationary recurrence
	(1 - theta) m_j = theta sum_(k<j) m_(j-k-1) (m_k - m_(k+1)) at lambda = 1, theta = 1/2 on arcsine moments
	"""
	if not 1 <= n <= MAX_CHECK_ORDER:
		raise DomainException('Catalan check order must lie in [1, {}], got {}'.format(MAX_CHECK_ORDER, n))
	numbers = [catalan(j) for j in range(n + 1)]
	for j in range(1, n + 1):
		if numbers[j] != sum(numbers[j - k] * numbers[k - 1] for k in range(1, j + 1)):
			return False
	theta = Fraction(1, 2)
	m = arcsine_moments(n + 1)
	for j in range(1, n + 1):
		if (1 - theta) * m[j] != theta * sum(m[j - k - 1] * (m[k] - m[k + 1]) for k in range(j)):
			return False
	return True
