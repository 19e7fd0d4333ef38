import math
import time
from typing import List, NamedTuple, Optional


class CheckResult(NamedTuple):
	name: str
	value: float
	limit: float
	passed: bool

	def to_json(self) -> dict:
		return {
			'name': self.name,
			'value': self.value if math.isfinite(self.value) else str(self.value),
			'limit': self.limit,
			'passed': self.passed,
		}


class SuiteResult(NamedTuple):
	name: str
	checks: List[CheckResult]
	seconds: float
	error: Optional[str] = None

	@property
	def passed(self) -> bool:
		return self.error is None and all(check.passed for check in self.checks)

	def to_json(self) -> dict:
		return {
			'passed': self.passed,
			'seconds': round(self.seconds, 3),
			'error': self.error,
			'checks': [check.to_json() for check in self.checks],
		}


class SuiteRecorder:
	"""
	Collects the checks of one suite
	"""
	def __init__(self, name: str):
		self.name = name
		self.checks: List[CheckResult] = []
		self.__start = time.monotonic()

	def at_most(self, name: str, value: float, limit: float) -> bool:
		value = float(value)
		passed = math.isfinite(value) and value <= limit
		self.checks.append(CheckResult(name, value, limit, passed))
		return passed

	def at_least(self, name: str, value: float, limit: float) -> bool:
		value = float(value)
		passed = math.isfinite(value) and value >= limit
		self.checks.append(CheckResult(name, value, limit, passed))
		return passed

	def holds(self, name: str, condition: bool) -> bool:
		self.checks.append(CheckResult(name, 1.0 if condition else 0.0, 1.0, bool(condition)))
		return bool(condition)

	def result(self, error: Optional[str] = None) -> SuiteResult:
		return SuiteResult(self.name, self.checks, time.monotonic() - self.__start, error)


def verdict_json(results: List[SuiteResult]) -> dict:
	return {
		'passed': all(result.passed for result in results),
		'suites': {result.name: result.to_json() for result in results},
	}
