import math

# NOTE: All supported settings must be added here


# ----------------
# Truncated spaces
# ----------------

FOCK_CUTOFF = 30

TAIL_MASS_BUDGET = 1e-6

TAIL_MASS_MARGIN = 0.1


# ----------
# Tolerances
# ----------

EXPM_TOLERANCE = 1e-12

INTEGRATOR_TOLERANCE = 1e-9

UNITARITY_TOLERANCE = 1e-10

HERMITICITY_TOLERANCE = 1e-12

NORMALIZATION_TOLERANCE = 1e-12

FACTORIZATION_TOLERANCE = 1e-9

NORM_DRIFT_TOLERANCE = 1e-8

UNCERTAINTY_TOLERANCE = 1e-9

EPR_ANGLE_TOLERANCE = 1e-6

# Acceptable infidelity between a protocol output and its closed-form target
PROTOCOL_FIDELITY_TOLERANCE = 1e-6

# Exact and literal post-selection probabilities must agree to this
PROBABILITY_AUDIT_TOLERANCE = 1e-10

# Post-selection below this probability is treated as unreachable
ZERO_PROBABILITY_THRESHOLD = 1e-14


# ------------------------------
# Desk-scale physical parameters
# ------------------------------

# Angular frequencies in rad/s
COM_FREQUENCY = 2 * math.pi * 1e6

# Two ions in a harmonic well: nu = sqrt(3) * mu
BREATHING_TO_COM_RATIO = math.sqrt(3)

RABI_FREQUENCY = 2 * math.pi * 20e3

# 40Ca+ S1/2 - D5/2 quadrupole transition (729 nm)
TRANSITION_FREQUENCY = 2 * math.pi * 411.042e12

ION_MASS_AMU = 40.0

LAMB_DICKE_PARAMETER = 0.1

LAMB_DICKE_LIMIT = 0.3

EXPANSION_ORDER = 2


# -------
# Reports
# -------

REPORT_FLOAT_DIGITS = 12

SWEEP_WORKERS = 1
