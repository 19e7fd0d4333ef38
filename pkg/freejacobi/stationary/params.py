import math
from dataclasses import dataclass
from typing import Tuple

from freejacobi import constant
from freejacobi.exceptions import DomainException

REGIME_SLACK = 1e-12


@dataclass(frozen=True)
class JacobiParams:
	"""
	Parameters (lambda, theta) of the free Jacobi process: P has trace lambda * theta, Q has trace theta
	"""
	lam: float
	theta: float

	def __post_init__(self):
		if not (math.isfinite(self.lam) and self.lam > 0):
			raise DomainException('lambda must be positive, got {}'.format(self.lam))
		if not (0 < self.theta < 1):
			raise DomainException('theta must lie in (0, 1), got {}'.format(self.theta))
		if self.alpha > 1 + REGIME_SLACK:
			raise DomainException('lambda * theta = {} exceeds 1'.format(self.alpha))

	@property
	def alpha(self) -> float:
		return self.lam * self.theta

	@property
	def r(self) -> float:
		return 1 / self.alpha

	@property
	def l(self) -> float:
		return 1 / self.lam

	@property
	def k(self) -> float:
		return (1 - self.theta) / self.alpha

	@property
	def A(self) -> float:
		return self.r ** 2

	@property
	def B(self) -> float:
		return 2 * (self.r + (self.r - 2) / self.lam)

	@property
	def C(self) -> float:
		return (1 - 1 / self.lam) ** 2

	@property
	def sde_valid(self) -> bool:
		return self.lam <= 1 and self.theta * (self.lam + 1) <= 1 + REGIME_SLACK

	@property
	def strict_interior(self) -> bool:
		return self.lam < 1 and self.theta * (self.lam + 1) < 1

	@property
	def edges(self) -> Tuple[float, float]:
		u = math.sqrt(self.theta * max(0.0, 1 - self.alpha))
		v = math.sqrt(self.alpha * (1 - self.theta))
		x_minus, x_plus = (u - v) ** 2, (u + v) ** 2
		if x_minus < constant.EDGE_SNAP:
			x_minus = 0.0
		if abs(1 - x_plus) < constant.EDGE_SNAP:
			x_plus = 1.0
		return x_minus, min(x_plus, 1.0)

	def __str__(self):
		return 'FJP(lambda={}, theta={})'.format(self.lam, self.theta)


def dual_params(p: JacobiParams) -> JacobiParams:
	"""
	Parameters of P - J, again a free Jacobi process
	"""
	return JacobiParams(p.alpha / (1 - p.theta), 1 - p.theta)
