"""Constants for the quantum fragments toolkit."""

import math

# Algebraic identities on matrices of dimension <= 8
TOL_ALG = 1e-12

# Positive semidefiniteness of covariance and RR matrices
TOL_PSD = 1e-10

# Exact-reproduction tolerance required before the Hardy support argument applies
TOL_HARDY = 1e-9

# Threshold below which a preparation weight is outside the support
TOL_SUPPORT = 1e-12

# Born-rule reproduction tolerance for the sphere quadrature at DEFAULT_RESOLUTION
KS_TOLERANCE = 1e-3

# Hilbert spaces beyond this dimension are not modelled
MAX_DIM = 16

# Phase space units (hbar = 1)
HBAR = 1.0
DEFAULT_RR_SCALE = HBAR / 2

# CHSH values
CLASSICAL_CHSH_BOUND = 0.75
QUANTUM_CHSH_VALUE = (2 + math.sqrt(2)) / 4

# Experiment defaults
DEFAULT_SEED = 42
DEFAULT_SAMPLES = 10**6
DEFAULT_TRIALS = 1000
DEFAULT_PAIRS = 100
DEFAULT_M = 8
DEFAULT_SQUEEZE = 1e-3
DEFAULT_DISPLACEMENT = 1.0
DEFAULT_RESOLUTION = (400, 800)
MIN_RESOLUTION = (16, 32)
MAX_SEED = 2**64 - 1

# Monte Carlo work is split into chunks seeded as seed + chunk_index
CHUNK_SIZE = 100_000

# Report formatting
SIGNIFICANT_DIGITS = 10
REPORT_FORMATS = ["json", "csv"]

# Preparation labels of the two single-system states in the PBR argument
PBR_FIRST = "psi1"
PBR_SECOND = "psi2"

# Environment configuration
LOG_LEVEL_ENV = "QFRAG_LOG_LEVEL"
LOG_DIR_ENV = "QFRAG_LOG_DIR"
DEFAULT_LOG_LEVEL = "WARNING"
