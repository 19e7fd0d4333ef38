VERSION = '0.3.0'
PACKAGE_NAME = 'freejacobi'
MANIFEST_SCHEMA = 'v1'

# measures
DEFAULT_GRID_SIZE = 2048
MASS_TOLERANCE = 1e-8
HANKEL_TOLERANCE = 1e-9
INVERSION_LADDER = (1e-2, 10 ** -2.5, 1e-3, 10 ** -3.5)
NEGATIVE_DENSITY_TOLERANCE = 1e-6
INVERSION_EDGE_MARGIN = 0.05
NEAR_AXIS_DISTANCE = 0.05

# stationary
EDGE_SNAP = 1e-14
HYP2F1_STOP = 1e-16
HYP2F1_MAX_TERMS = 100000
LADDER_MAX_DIGIT_LOSS = 6
BRANCH_TEST_POINT = 10 + 10j

# moments
DEFAULT_TRUNCATION = 64
MONOTONE_TOLERANCE = 1e-9
START_EPSILON = 1e-6
TAIL_NEGLIGIBLE = 1e-18
DEFAULT_TAIL_TOLERANCE = 1e-5

# cauchy
STENCIL_MIN_POINTS = 5
TRUST_MARGIN = 5
CONTAMINATION_TOLERANCE = 1e-8
FILTER_ACCURACY = 1e-16
FILTER_MAX_ORDER = 400

# matsim
UNITARITY_TOLERANCE = 1e-8
HAAR_TOLERANCE = 1e-12
SPECTRUM_TOLERANCE = 1e-10
CLAMP_EPSILON = 1e-9
CLAMP_FLAG_RATE = 0.05
ABORT_RATE_LIMIT = 0.01
MAX_CHEBYSHEV_ORDER = 8
HAAR_RESAMPLE_LIMIT = 8
