import math
from typing import Callable, NamedTuple

from freejacobi.exceptions import DomainException
from freejacobi.measures.quadrature import quadrature
from freejacobi.stationary.law import stationary_density
from freejacobi.stationary.params import JacobiParams, dual_params


class LogPotentials(NamedTuple):
	log1m: float  # stationary mean of log(1 - x), i.e. of log(P - J)
	logJ: float  # stationary mean of log(x)


def xlogx(x: float) -> float:
	if x < 0:
		raise DomainException('x log x needs x >= 0, got {}'.format(x))
	return 0.0 if x == 0 else x * math.log(x)


def __require_regime(p: JacobiParams):
	if not p.sde_valid:
		raise DomainException('Log potentials need lambda <= 1 and theta (lambda + 1) <= 1, got {}'.format(p))


def __log_one_minus(p: JacobiParams) -> float:
	boundary = max(0.0, 1 - p.theta * (p.lam + 1))
	return (xlogx(1 - p.theta) + xlogx(max(0.0, 1 - p.alpha)) - xlogx(boundary)) / p.alpha


def stationary_log_potentials(p: JacobiParams) -> LogPotentials:
	"""
	Closed forms of the stationary means of log(1 - x) and log(x)

	P - J is again a free Jacobi process, with the parameters given by dual_params, so the mean of log(x)
	is the log(1 - x) formula evaluated there
	"""
	__require_regime(p)
	return LogPotentials(__log_one_minus(p), __log_one_minus(dual_params(p)))


def log_potential_integral(p: JacobiParams) -> float:
	"""
	The integral representation of twice the stationary mean of log(1 - x):
	-integral over [0, 1] of ((1 + 1/lambda) + (C z - B) / (sqrt(C z^2 - B z + A) + r)) / (1 - z)
	"""
	__require_regime(p)
	A, B, C, r = p.A, p.B, p.C, p.r

	def integrand(z: float) -> float:
		if z >= 1:
			return 0.0
		root = math.sqrt(max(0.0, C * z * z - B * z + A))
		return ((1 + p.l) + (C * z - B) / (root + r)) / (1 - z)

	return -quadrature(integrand, 0.0, 1.0)


def __against_density(p: JacobiParams, f: Callable[[float], float]) -> float:
	lo, hi = p.edges

	def integrand(x: float) -> float:
		if not lo < x < hi:
			return 0.0
		return f(x) * stationary_density(p, x)

	return quadrature(integrand, lo, hi)


def log_potentials_by_quadrature(p: JacobiParams) -> LogPotentials:
	__require_regime(p)
	return LogPotentials(
		__against_density(p, lambda x: math.log1p(-x)),
		__against_density(p, math.log),
	)
