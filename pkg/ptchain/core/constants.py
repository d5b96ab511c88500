"""Constants used throughout the application."""

import os

# Paths
HOME_DIR = os.path.expanduser("~")
PTCHAIN_CONFIG_DIR = os.path.join(HOME_DIR, ".config", "ptchain")
PTCHAIN_CONFIG_FILE = os.path.join(PTCHAIN_CONFIG_DIR, "ptchain.conf")

# Runtime settings (overridable from the environment or config files)
PTCHAIN_WORKERS = 1
PTCHAIN_LOG_LEVEL = "ERROR"
PTCHAIN_OUTPUT_DIR = "."

# Model defaults, energies in units of t
DEFAULT_HOPPING = 1.0
DEFAULT_SSH_DIMERIZATION = 0.3
DEFAULT_KITAEV_PAIRING = 1.0

# Eigensolver
DEFAULT_RESIDUAL_TOLERANCE = 1e-10
QR_SWEEPS_PER_DIMENSION = 30  # iteration cap is 30 * dim sweeps
NORMALIZATION_TOLERANCE = 1e-12

# Classification
DEFAULT_ZERO_TOL = 1e-8  # numerical zero for E = Re E = Im E = 0
DEFAULT_REALITY_TOL = 1e-9  # above solver noise, below the zero threshold
DEFAULT_PAIRING_TOL = 1e-8
DEFAULT_EDGE_FRACTION = 0.05  # 10 sites of 200 at each end
DEFAULT_EDGE_THRESHOLD = 0.5

# Sweeps and phase maps
DEFAULT_THETA_STEPS = 101
DEFAULT_MU_STEPS = 81
DEFAULT_MAP_STEPS = 81
DEFAULT_FAST_SITES = 100
DEFAULT_FULL_SITES = 200
DEFAULT_GAMMA_HI = 2.0
DEFAULT_SCAN_STEP = 0.01
DEFAULT_REFINE_TOL = 1e-6

# CLI exit codes
EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_EMPTY_RESULT = 3
EXIT_SOLVER = 4

# Output files
MANIFEST_FILE = "manifest.json"
SPECTRUM_FILE = "spectrum.csv"
PROFILE_FILE = "profile.csv"
SWEEP_FILE = "sweep.csv"
PHASEMAP_FILE = "phasemap.csv"
PHASEMAP_BOUNDARY_FILE = "phasemap_boundary.csv"
CRITICAL_GAMMA_FILE = "critical_gamma.json"
SWEEP_PLOT_FILE = "sweep.svg"
PHASEMAP_PLOT_FILE = "phasemap.svg"

# Plot colours: bright = two zero modes, dark = none
PHASEMAP_COLORS = ("#000000", "#ffd700")
SWEEP_MARKER_COLOR = "#1f3a93"
EDGE_MARKER_COLOR = "#000000"

# Console padding settings
CONSOLE_LEFT_PADDING = 1
CONSOLE_RIGHT_PADDING = 1
