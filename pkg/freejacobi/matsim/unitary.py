import math
from typing import Optional

import numpy as np
from scipy import linalg

from freejacobi import constant
from freejacobi.exceptions import DomainException, SimulationException


def trial_generator(seed: int, trial: int) -> np.random.Generator:
	"""
	Independent counter-based stream of one trial, a function of (seed, trial) only
	"""
	return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, trial])))


def ginibre(d: int, rng: np.random.Generator) -> np.ndarray:
	return (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / math.sqrt(2)


def sample_haar_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
	"""
	QR of a complex Ginibre matrix, each column of Q rotated by the phase of the matching diagonal entry of R
	so that R gets a positive diagonal and Q is exactly Haar distributed
	"""
	if d < 1:
		raise DomainException('Dimension must be positive, got {}'.format(d))
	for _ in range(constant.HAAR_RESAMPLE_LIMIT):
		q, r = np.linalg.qr(ginibre(d, rng))
		diagonal = np.diagonal(r)
		if np.min(np.abs(diagonal)) > constant.HAAR_TOLERANCE:
			return q * (diagonal / np.abs(diagonal))
	raise SimulationException('Ginibre matrix stayed rank deficient after {} samples'.format(constant.HAAR_RESAMPLE_LIMIT))


def hermitian_increment(d: int, h: float, rng: np.random.Generator) -> np.ndarray:
	"""
	GUE increment with E |dX_jk|^2 = h / d for every entry, so that E tr_d(dX^2) = h
	"""
	if h <= 0:
		raise DomainException('Time step must be positive, got {}'.format(h))
	m = ginibre(d, rng)
	return (m + m.conj().T) / 2 * math.sqrt(2 * h / d)


def unitary_bm_step(Y: np.ndarray, increment: np.ndarray) -> np.ndarray:
	"""
	Y_next = exp(i dX) Y through the eigendecomposition of the Hermitian increment
	"""
	eigenvalues, vectors = np.linalg.eigh(increment)
	return (vectors * np.exp(1j * eigenvalues)) @ vectors.conj().T @ Y


def unitarity_defect(Y: np.ndarray) -> float:
	return float(np.max(np.abs(Y.conj().T @ Y - np.eye(len(Y)))))


def polar_projection(Y: np.ndarray) -> np.ndarray:
	return linalg.polar(Y)[0]


def corner_jacobi(Y: np.ndarray, m: int, p: int, check: bool = True) -> np.ndarray:
	"""
	J = X X* with X the top-left m x p block of Y
	"""
	d = len(Y)
	if not 1 <= m <= p <= d:
		raise DomainException('Need 1 <= m <= p <= d, got m={} p={} d={}'.format(m, p, d))
	x = Y[:m, :p]
	jacobi = x @ x.conj().T
	jacobi = (jacobi + jacobi.conj().T) / 2
	if check:
		jacobi_spectrum(jacobi)
	return jacobi


def jacobi_spectrum(jacobi: np.ndarray, tolerance: float = constant.SPECTRUM_TOLERANCE) -> np.ndarray:
	"""
	Eigenvalues of J, verified to lie in [-tolerance, 1 + tolerance] and then clipped to [0, 1]
	"""
	eigenvalues = np.linalg.eigvalsh(jacobi)
	if eigenvalues[0] < -tolerance or eigenvalues[-1] > 1 + tolerance:
		raise SimulationException('Corner spectrum [{:.3g}, {:.3g}] leaves [0, 1], unitarity is broken upstream'.format(eigenvalues[0], eigenvalues[-1]))
	return np.clip(eigenvalues, 0, 1)


def scalar_corner_unitary(d: int, m: int, p: int, c: float) -> np.ndarray:
	"""
	A unitary whose m x p corner gives J = c I_m: rotations by arccos(sqrt(c)) in the planes (j, p + j), j < m
	"""
	if p + m > d:
		raise DomainException('Scalar start needs p + m <= d, got m={} p={} d={}'.format(m, p, d))
	if not 0 <= c <= 1:
		raise DomainException('Scalar start needs c in [0, 1], got {}'.format(c))
	cosine, sine = math.sqrt(c), math.sqrt(1 - c)
	Y = np.eye(d, dtype=complex)
	rows = np.arange(m)
	Y[rows, rows] = cosine
	Y[rows + p, rows + p] = cosine
	Y[rows, rows + p] = -sine
	Y[rows + p, rows] = sine
	return Y


def hermitian_sqrt(eigenvalues: np.ndarray, vectors: np.ndarray) -> np.ndarray:
	return (vectors * np.sqrt(eigenvalues)) @ vectors.conj().T


def brownian_matrix(m: int, h: float, d: int, rng: Optional[np.random.Generator]) -> np.ndarray:
	"""
	Complex m x m Brownian increment with E |dB_jk|^2 = h / d, zero when rng is None
	"""
	if rng is None:
		return np.zeros((m, m), dtype=complex)
	return ginibre(m, rng) * math.sqrt(h / d)
