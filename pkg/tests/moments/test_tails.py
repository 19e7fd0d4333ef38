import math

import numpy as np
import pytest

from freejacobi.exceptions import TruncationException
from freejacobi.moments.tails import TailModel, fit_tail, required_order, tail_model, tail_sums


def power_law(N: int, scale: float = 1.0, ratio: float = 0.7, exponent: float = 1.5) -> np.ndarray:
	n = np.arange(1, N + 1, dtype=float)
	return np.concatenate([[1.0], scale * ratio ** n * n ** -exponent])


def test_fit_recovers_the_model():
	scale, ratio, exponent = fit_tail(power_law(40, scale=2.0), (30, 35, 40))
	assert scale == pytest.approx(2.0, rel=1e-9)
	assert ratio == pytest.approx(0.7, rel=1e-12)
	assert exponent == pytest.approx(1.5, rel=1e-9)


def test_tail_model_of_exact_power_law():
	m = power_law(40)
	model = tail_model(m)
	expected = math.fsum(0.7 ** n * n ** -1.5 for n in range(41, 400))
	assert model.resolvent_tail == pytest.approx(expected, rel=1e-9)
	assert model.log_tail == pytest.approx(math.fsum(0.7 ** n * n ** -2.5 for n in range(41, 400)), rel=1e-9)
	assert model.uncertainty < 1e-12


def test_negligible_tail():
	m = 0.3 ** np.arange(41, dtype=float)
	assert tail_model(m) == TailModel.negligible()


def test_too_few_moments():
	with pytest.raises(TruncationException):
		tail_model([1.0, 0.5, 0.3])


def test_non_decaying_moments():
	with pytest.raises(TruncationException):
		tail_sums(1.0, 1.0, 0.5, 10)
	with pytest.raises(TruncationException):
		required_order(1.0, 1.2, 0.0, 1e-3, False, 1)


def test_required_order():
	assert required_order(1.0, 0.5, 0.0, 1e-3, False, 1) == 10
	assert required_order(1.0, 0.5, 0.0, 1e-3, True, 1) <= 10
