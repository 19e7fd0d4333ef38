from typing import Optional


class FreeJacobiException(Exception):
	pass


class DomainException(FreeJacobiException):
	pass


class EvaluationException(FreeJacobiException):
	def __init__(self, message: str, abscissa: Optional[complex] = None):
		if abscissa is not None:
			message = '{} (at {})'.format(message, abscissa)
		super().__init__(message)
		self.abscissa = abscissa


class IntegrationException(FreeJacobiException):
	def __init__(self, message: str, t: float, n: int):
		super().__init__('{} at t={} n={}'.format(message, t, n))
		self.t = t
		self.n = n


class TruncationException(FreeJacobiException):
	def __init__(self, message: str, required_order: Optional[int] = None):
		if required_order is not None:
			message = '{}, truncation order N >= {} required'.format(message, required_order)
		super().__init__(message)
		self.required_order = required_order


class StencilException(FreeJacobiException):
	pass


class SimulationException(FreeJacobiException):
	pass
