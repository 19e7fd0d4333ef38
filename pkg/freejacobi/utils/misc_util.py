import time
from fractions import Fraction
from typing import Sequence


def get_milli_time() -> int:
	return int(time.time() * 1000)


# Returns a string like hh:mm:ss.mmm for given millis
def format_milli(millis: int) -> str:
	seconds = millis // 1000 % 60
	minutes = millis // (1000 * 60) % 60
	hours = millis // (1000 * 60 * 60)
	return '{:0>2}:{:0>2}:{:0>2}.{:0>3}'.format(hours, minutes, seconds, millis % 1000)


def format_float(value: float) -> str:
	# 17 significant digits round-trip every double
	return '{:.17g}'.format(value)


def format_fraction(value: Fraction) -> str:
	return '{}/{}'.format(value.numerator, value.denominator)


def format_vector(values: Sequence[float], digits: int = 6) -> str:
	return '[{}]'.format(', '.join('{:.{}g}'.format(v, digits) for v in values))
