import csv
import json
import math
from typing import Callable, List, NamedTuple, Optional

import numpy as np
from scipy import integrate
from scipy.interpolate import PchipInterpolator

from freejacobi import constant
from freejacobi.exceptions import DomainException
from freejacobi.measures.quadrature import QUAD_EPSABS, QUAD_LIMIT, edge_substitution

DensityFunction = Callable[[np.ndarray], np.ndarray]


class MeasureSidecar(NamedTuple):
	atom0: float
	atom1: float
	lo: float
	hi: float


def midpoint_angles(grid_size: int) -> np.ndarray:
	return (np.arange(grid_size) + 0.5) * math.pi / (2 * grid_size)


class SpectralMeasure:
	"""
	A probability law on [0, 1]: atoms at 0 and 1 plus a density supported by [lo, hi]

	The density is sampled on a grid clustered toward the support edges, x_j = lo + (hi - lo) sin^2(phi_j)
	with phi_j the midpoints of a uniform partition of [0, pi / 2]. The quadrature weights attached to the
	grid turn the midpoint rule in phi into a rule for dx, which converges spectrally for densities with
	square root behaviour at the edges
	"""
	def __init__(
			self, atom0: float, atom1: float, lo: float, hi: float,
			grid: np.ndarray, density: np.ndarray, weights: np.ndarray,
			density_function: Optional[DensityFunction] = None,
			mass_tolerance: float = constant.MASS_TOLERANCE
	):
		self.atom0 = float(atom0)
		self.atom1 = float(atom1)
		self.lo = float(lo)
		self.hi = float(hi)
		self.grid = np.asarray(grid, dtype=float)
		self.density = np.asarray(density, dtype=float)
		self.weights = np.asarray(weights, dtype=float)
		self.density_function = density_function
		self.__validate(mass_tolerance)

	def __validate(self, mass_tolerance: float):
		if not (0 <= self.atom0 <= 1 and 0 <= self.atom1 <= 1):
			raise DomainException('Atom masses ({}, {}) must lie in [0, 1]'.format(self.atom0, self.atom1))
		if not (0 <= self.lo < self.hi <= 1):
			raise DomainException('Support ({}, {}) is not a subinterval of [0, 1]'.format(self.lo, self.hi))
		if not (self.grid.shape == self.density.shape == self.weights.shape) or self.grid.ndim != 1:
			raise DomainException('Grid, density and weights must be vectors of the same length')
		if len(self.grid) > 0:
			if np.any(np.diff(self.grid) <= 0):
				raise DomainException('Grid is not strictly increasing')
			if self.grid[0] < self.lo or self.grid[-1] > self.hi:
				raise DomainException('Grid leaves the support [{}, {}]'.format(self.lo, self.hi))
			if not np.all(np.isfinite(self.density)) or np.any(self.density < 0):
				raise DomainException('Density must be finite and nonnegative')
		mass = self.total_mass
		if abs(mass - 1) > mass_tolerance:
			raise DomainException('Total mass {} differs from 1'.format(mass))

	@classmethod
	def from_density(
			cls, density_function: DensityFunction, lo: float, hi: float,
			atom0: float = 0.0, atom1: float = 0.0, grid_size: int = constant.DEFAULT_GRID_SIZE
	) -> 'SpectralMeasure':
		if grid_size < 1:
			raise DomainException('Grid size must be positive, got {}'.format(grid_size))
		phi = midpoint_angles(grid_size)
		grid, jacobian = edge_substitution(lo, hi, phi)
		weights = jacobian * math.pi / (2 * grid_size)
		density = np.asarray(density_function(grid), dtype=float)
		return cls(atom0, atom1, lo, hi, grid, density, weights, density_function=density_function)

	@classmethod
	def point_mass(cls, at_one: bool) -> 'SpectralMeasure':
		empty = np.zeros(0)
		return cls(0.0 if at_one else 1.0, 1.0 if at_one else 0.0, 0.0, 1.0, empty, empty, empty)

	@classmethod
	def from_samples(cls, sidecar: MeasureSidecar, grid: np.ndarray, density: np.ndarray) -> 'SpectralMeasure':
		grid = np.asarray(grid, dtype=float)
		density = np.asarray(density, dtype=float)
		if len(grid) == 0:
			return cls(sidecar.atom0, sidecar.atom1, sidecar.lo, sidecar.hi, grid, density, np.zeros(0))
		width = sidecar.hi - sidecar.lo
		phi = np.arcsin(np.sqrt(np.clip((grid - sidecar.lo) / width, 0, 1)))
		if np.allclose(phi, midpoint_angles(len(grid)), rtol=0, atol=1e-9):
			weights = width * np.sin(2 * phi) * math.pi / (2 * len(grid))
		else:
			edges = np.concatenate([[sidecar.lo], (grid[1:] + grid[:-1]) / 2, [sidecar.hi]])
			weights = np.diff(edges)
		interpolator = PchipInterpolator(grid, density, extrapolate=False)

		def density_function(x):
			return np.nan_to_num(interpolator(x), nan=0.0)

		return cls(sidecar.atom0, sidecar.atom1, sidecar.lo, sidecar.hi, grid, density, weights, density_function=density_function)

	@property
	def has_continuous_part(self) -> bool:
		return len(self.grid) > 0

	@property
	def continuous_mass(self) -> float:
		return float(np.sum(self.weights * self.density))

	@property
	def total_mass(self) -> float:
		return self.atom0 + self.atom1 + self.continuous_mass

	@property
	def sidecar(self) -> MeasureSidecar:
		return MeasureSidecar(self.atom0, self.atom1, self.lo, self.hi)

	def integrate_near(self, f: Callable[[float], complex], breakpoint: float) -> complex:
		"""
		Adaptive integral of f against the density, refined around the given abscissa
		"""
		density_function = self.density_function
		lo, width = self.lo, self.hi - self.lo

		def part(extract: Callable[[complex], float]) -> float:
			def integrand(phi: float) -> float:
				s = math.sin(phi)
				x = lo + width * s * s
				return extract(f(x)) * float(density_function(np.asarray(x))) * width * math.sin(2 * phi)
			points = None
			if lo < breakpoint < self.hi:
				points = [math.asin(math.sqrt((breakpoint - lo) / width))]
			value, _ = integrate.quad(integrand, 0, math.pi / 2, epsabs=QUAD_EPSABS, epsrel=1e-11, limit=QUAD_LIMIT, points=points)
			return value

		return complex(part(lambda v: v.real), part(lambda v: v.imag))


def save_measure(mu: SpectralMeasure, csv_path: str, json_path: str):
	with open(csv_path, 'w', encoding='utf8', newline='') as f:
		writer = csv.writer(f, lineterminator='\n')
		writer.writerow(['x', 'density'])
		for x, g in zip(mu.grid, mu.density):
			writer.writerow(['{:.17g}'.format(x), '{:.17g}'.format(g)])
	with open(json_path, 'w', encoding='utf8') as f:
		json.dump(mu.sidecar._asdict(), f, indent=4)


def load_measure(csv_path: str, json_path: str) -> SpectralMeasure:
	with open(json_path, 'r', encoding='utf8') as f:
		data = json.load(f)
	sidecar = MeasureSidecar(*(float(data[key]) for key in MeasureSidecar._fields))
	grid: List[float] = []
	density: List[float] = []
	with open(csv_path, 'r', encoding='utf8', newline='') as f:
		reader = csv.reader(f)
		header = next(reader)
		if header != ['x', 'density']:
			raise DomainException('Unexpected measure csv header {}'.format(header))
		for row in reader:
			grid.append(float(row[0]))
			density.append(float(row[1]))
	return SpectralMeasure.from_samples(sidecar, np.array(grid), np.array(density))
