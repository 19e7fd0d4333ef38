import math
from typing import Callable, NamedTuple, Sequence

import numpy as np

from freejacobi import constant
from freejacobi.exceptions import DomainException, EvaluationException

RICHARDSON_TOLERANCE = 1e-4


class InversionResult(NamedTuple):
	x: np.ndarray
	density: np.ndarray  # clipped at 0
	raw: np.ndarray  # extrapolated value before clipping
	flagged: np.ndarray


def richardson_pair(y_far: float, v_far: float, y_near: float, v_near: float) -> float:
	# removes the term linear in y
	return (y_far * v_near - y_near * v_far) / (y_far - y_near)


def stieltjes_inversion(
		g: Callable[[complex], complex], x_grid: Sequence[float],
		y_ladder: Sequence[float] = constant.INVERSION_LADDER
) -> InversionResult:
	"""
	Recover a density from its Cauchy transform through -Im G(x + iy) / pi, y -> 0+

	Consecutive ladder pairs give Richardson estimates; the one built from the two smallest y values is
	returned and a point is flagged when it disagrees with the previous estimate beyond tolerance
	"""
	y_ladder = [float(y) for y in y_ladder]
	if len(y_ladder) < 2:
		raise DomainException('Stieltjes inversion needs at least two ladder values')
	if any(y <= 0 for y in y_ladder) or any(a <= b for a, b in zip(y_ladder, y_ladder[1:])):
		raise DomainException('Ladder {} must be positive and strictly decreasing'.format(y_ladder))
	x_grid = np.asarray(x_grid, dtype=float)
	raw = np.empty_like(x_grid)
	flagged = np.zeros(len(x_grid), dtype=bool)
	for i, x in enumerate(x_grid):
		values = [-g(complex(x, y)).imag / math.pi for y in y_ladder]
		estimates = [
			richardson_pair(y_ladder[k], values[k], y_ladder[k + 1], values[k + 1])
			for k in range(len(y_ladder) - 1)
		]
		best = estimates[-1]
		if len(estimates) >= 2 and abs(best - estimates[-2]) > RICHARDSON_TOLERANCE * max(1.0, abs(best)):
			flagged[i] = True
		if best < -constant.NEGATIVE_DENSITY_TOLERANCE:
			raise EvaluationException('Inverted density {} is negative beyond tolerance'.format(best), x)
		raw[i] = best
	return InversionResult(x_grid, np.clip(raw, 0, None), raw, flagged)
