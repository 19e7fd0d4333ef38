import math
from typing import NamedTuple, Optional, Sequence, Tuple

import numpy as np

from freejacobi import constant
from freejacobi.exceptions import TruncationException

TAIL_TERM_CUTOFF = 1e-20
MAX_TAIL_TERMS = 10 ** 6


class TailModel(NamedTuple):
	ratio: float
	exponent: float
	scale: float
	resolvent_tail: float  # estimate of sum_(n > N) m_n
	log_tail: float  # estimate of sum_(n > N) m_n / n
	uncertainty: float  # disagreement with the fit taken one stride earlier

	@classmethod
	def negligible(cls) -> 'TailModel':
		return cls(0.0, 0.0, 0.0, 0.0, 0.0, 0.0)


def fit_tail(m: Sequence[float], points: Sequence[int]) -> Tuple[float, float, float]:
	"""
	Solve log m_n = log C + n log rho - beta log n at three indices, returns (C, rho, beta)
	"""
	n = np.array(points, dtype=float)
	matrix = np.column_stack([np.ones(3), n, -np.log(n)])
	values = np.log(np.array([float(m[i]) for i in points]))
	log_scale, log_ratio, exponent = np.linalg.solve(matrix, values)
	return math.exp(log_scale), math.exp(log_ratio), float(exponent)


def tail_sums(scale: float, ratio: float, exponent: float, start: int) -> Tuple[float, float]:
	"""
	sum_(n >= start) C rho^n n^-beta and the same sum with an extra 1/n
	"""
	if ratio >= 1:
		raise TruncationException('Moments do not decay geometrically, fitted ratio {:.6g}'.format(ratio))
	if scale == 0 or ratio <= 0:
		return 0.0, 0.0
	count = 64
	while True:
		n = np.arange(start, start + count, dtype=float)
		terms = scale * np.exp(n * math.log(ratio) - exponent * np.log(n))
		total = math.fsum(terms)
		if terms[-1] <= TAIL_TERM_CUTOFF * max(total, TAIL_TERM_CUTOFF) or count >= MAX_TAIL_TERMS:
			return total, math.fsum(terms / n)
		count *= 4


def tail_model(m: Sequence[float], stride: Optional[int] = None) -> TailModel:
	"""
	Empirical tail of a moment sequence from m_n ~ C rho^n n^-beta fitted at N - 2s, N - s, N

	The uncertainty compares the fit at N - 3s, N - 2s, N - s against what it should predict: the known
	moments after N - s plus the tail estimate
	"""
	N = len(m) - 1
	if float(m[N]) < constant.TAIL_NEGLIGIBLE:
		return TailModel.negligible()
	if stride is None:
		stride = max(1, N // 8)
	if N - 2 * stride < 1:
		raise TruncationException('Too few moments to model the tail', required_order=2 * stride + 1)
	scale, ratio, exponent = fit_tail(m, (N - 2 * stride, N - stride, N))
	resolvent_tail, log_tail = tail_sums(scale, ratio, exponent, N + 1)
	uncertainty = math.inf
	if N - 3 * stride >= 1:
		early = fit_tail(m, (N - 3 * stride, N - 2 * stride, N - stride))
		if early[1] < 1:
			predicted_resolvent, predicted_log = tail_sums(*early, N - stride + 1)
			known = range(N - stride + 1, N + 1)
			actual_resolvent = math.fsum(float(m[n]) for n in known) + resolvent_tail
			actual_log = math.fsum(float(m[n]) / n for n in known) + log_tail
			uncertainty = max(abs(predicted_resolvent - actual_resolvent), abs(predicted_log - actual_log))
	return TailModel(ratio, exponent, scale, resolvent_tail, log_tail, uncertainty)


def required_order(scale: float, ratio: float, exponent: float, tolerance: float, log_series: bool, start: int) -> int:
	"""
	Smallest N >= start whose modelled tail beyond N falls below the tolerance
	"""
	if ratio >= 1:
		raise TruncationException('Moments do not decay geometrically, ratio {:.6g}'.format(ratio))
	for order in range(start, start + MAX_TAIL_TERMS):
		n = order + 1
		term = scale * ratio ** n * n ** (-exponent) / (1 - ratio)
		if log_series:
			term /= n
		if term <= tolerance:
			return order
	return start + MAX_TAIL_TERMS
