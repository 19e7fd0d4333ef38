import math
from fractions import Fraction

import numpy as np
import pytest

from freejacobi.measures.functionals import moments_of_measure
from freejacobi.moments.catalan import arcsine_moment
from freejacobi.moments.hierarchy import fixed_point_moments
from freejacobi.states import MomentRoute
from freejacobi.stationary.hypergeometric import (
	edge_integral, hyp2f1, hyp2f1_half_one_two, hyp2f1_quadratic, hyp2f1_with_magnitude
)
from freejacobi.stationary.ladder import branch_diagnostic, stationary_moments
from freejacobi.stationary.law import stationary_measure
from freejacobi.stationary.params import JacobiParams
from freejacobi.exceptions import DomainException


def test_terminating_series():
	assert hyp2f1(-2, 1.5, 3, 0.5) == pytest.approx(0.578125, abs=1e-15)
	value, magnitude = hyp2f1_with_magnitude(-6, 1.5, 3, 0.9)
	assert magnitude >= abs(value)


def test_series_domain():
	with pytest.raises(DomainException):
		hyp2f1(0.5, 1, 2, 1.5)


def test_series_near_the_unit_circle():
	for w in (0.9999, 0.999, -0.9999):
		assert hyp2f1(0.5, 1, 2, w) == pytest.approx(2 * (1 - math.sqrt(1 - w)) / w, abs=1e-12)


def test_closed_forms():
	assert hyp2f1_half_one_two(0.3) == pytest.approx(hyp2f1(0.5, 1, 2, 0.3), abs=1e-14)
	assert hyp2f1_quadratic(0.5, 1, 0.4) == pytest.approx(hyp2f1(0.5, 1, 2, 0.4), abs=1e-13)
	assert edge_integral(0.2, 0.7) == pytest.approx(edge_integral(0.2, 0.7, closed_form=False), abs=1e-13)


def test_arcsine_ladder(arcsine):
	ladder = stationary_moments(arcsine, 10)
	for n in range(11):
		assert ladder.values[n] == pytest.approx(float(arcsine_moment(n)), abs=1e-10)


@pytest.mark.parametrize('lam, theta', [(0.5, 0.5), (0.3, 0.4), (0.9, 0.2)])
def test_ladder_against_quadrature(lam, theta):
	p = JacobiParams(lam, theta)
	ladder = stationary_moments(p, 20)
	assert np.max(np.abs(ladder.values - moments_of_measure(stationary_measure(p), 20))) < 1e-10


def test_ladder_against_fixed_point_recursion():
	p = JacobiParams(0.3, 0.4)
	recursion = fixed_point_moments(Fraction(2, 5), Fraction(3, 25), 12)
	assert np.max(np.abs(stationary_moments(p, 12).values - np.array([float(v) for v in recursion]))) < 1e-10


def test_atom_at_zero_uses_quadrature():
	ladder = stationary_moments(JacobiParams(2, 0.25), 6)
	assert ladder.route == MomentRoute.quadrature
	assert ladder.values[1] == pytest.approx(0.25, abs=1e-8)


def test_branch_diagnostic(half):
	diagnostic = branch_diagnostic(half)
	assert diagnostic.consistent
	assert diagnostic.selected < 1e-5


def test_low_orders_stay_on_the_ladder():
	ladder = stationary_moments(JacobiParams(0.3, 0.4), 8)
	assert ladder.route == MomentRoute.hypergeometric
	assert not ladder.fallback
