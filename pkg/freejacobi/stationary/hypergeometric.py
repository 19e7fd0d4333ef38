import math
from typing import Tuple

from freejacobi import constant
from freejacobi.exceptions import DomainException


def _nonpositive_integer(value: float) -> bool:
	return value <= 0 and value == math.floor(value)


def __term_cap(w: float) -> int:
	if w == 0:
		return 1
	return constant.HYP2F1_MAX_TERMS + int(math.ceil(math.log(constant.HYP2F1_STOP) / math.log(abs(w))))


def hyp2f1_with_magnitude(a: float, b: float, c: float, w: float) -> Tuple[float, float]:
	"""
	Gauss hypergeometric function by its ascending series

	A nonpositive integer a (or b) terminates the series, which is then summed exactly for any w.
	Otherwise |w| < 1 is required and the summation stops once the geometric bound of the remainder,
	|term| q / (1 - q) with q the larger of |w| and the current term ratio, drops below HYP2F1_STOP
	relative to the partial sum

	Also returns the sum of absolute terms, whose ratio to the value measures the cancellation
	"""
	terminating = [-int(v) for v in (a, b) if _nonpositive_integer(v)]
	length = min(terminating) if len(terminating) > 0 else None
	if length is None and abs(w) >= 1:
		raise DomainException('Non-terminating 2F1({}, {}; {}) series needs |w| < 1, got w={}'.format(a, b, c, w))
	cap = __term_cap(w)
	terms = [1.0]
	term = 1.0
	partial = 1.0
	k = 0
	while True:
		if length is not None and k >= length:
			break
		if c + k == 0:
			raise DomainException('2F1 series hits a pole at c={}'.format(c))
		ratio = (a + k) * (b + k) / ((c + k) * (k + 1)) * w
		term *= ratio
		terms.append(term)
		partial += term
		k += 1
		if length is None:
			q = max(abs(w), abs(ratio))
			if q < 1 and abs(term) * q / (1 - q) <= constant.HYP2F1_STOP * abs(partial):
				break
			if k >= cap:
				raise DomainException('2F1 series at w={} did not converge in {} terms'.format(w, k))
	return math.fsum(terms), math.fsum(abs(term) for term in terms)


def hyp2f1(a: float, b: float, c: float, w: float) -> float:
	return hyp2f1_with_magnitude(a, b, c, w)[0]


def hyp2f1_half_one_two(w: float) -> float:
	"""
	2F1(1/2, 1; 2; w) = 2 (1 - sqrt(1 - w)) / w, written as 2 / (1 + sqrt(1 - w)) to stay exact at w = 0
	"""
	if w > 1:
		raise DomainException('2F1(1/2, 1; 2; w) is real only for w <= 1, got {}'.format(w))
	return 2 / (1 + math.sqrt(1 - w))


def hyp2f1_quadratic(a: float, b: float, w: float) -> float:
	"""
	2F1(a, b; 2b; w) through the quadratic transformation (1 - w/2)^-a 2F1(a/2, (a+1)/2; b+1/2; (w/(2-w))^2)
	"""
	if not 0 <= w < 2:
		raise DomainException('Quadratic transformation needs w in [0, 2), got {}'.format(w))
	return (1 - w / 2) ** (-a) * hyp2f1(a / 2, (a + 1) / 2, b + 0.5, (w / (2 - w)) ** 2)


def edge_integral(lo: float, hi: float, closed_form: bool = True) -> float:
	"""
	Integral of sqrt((hi - x)(x - lo)) / x over [lo, hi]

	Closed form (pi/2)(lo + hi - 2 sqrt(lo hi)), or (pi/4)(hi - lo)^2 / (lo + hi) * 2F1(1/2, 1; 2; ((hi - lo)/(hi + lo))^2)
	with the 2F1 summed as a series, which needs lo > 0
	"""
	if not 0 <= lo < hi:
		raise DomainException('Edge integral needs 0 <= lo < hi, got [{}, {}]'.format(lo, hi))
	if closed_form:
		return math.pi / 2 * (math.sqrt(hi) - math.sqrt(lo)) ** 2
	w = ((hi - lo) / (hi + lo)) ** 2
	return math.pi / 4 * (hi - lo) ** 2 / (hi + lo) * hyp2f1(0.5, 1, 2, w)
