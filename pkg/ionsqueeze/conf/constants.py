ION1 = 'ion1'
ION2 = 'ion2'
MODE_C = 'mode_c'
MODE_R = 'mode_r'

# Composite space ordering; basis indices are row-major in this order
SUBSYSTEMS = (ION1, ION2, MODE_C, MODE_R)
INTERNAL_SUBSYSTEMS = (ION1, ION2)
MOTIONAL_SUBSYSTEMS = (MODE_C, MODE_R)
MODE_LABELS = {
    MODE_C: 'center-of-mass mode',
    MODE_R: 'breathing mode',
}

# Internal-state encoding: |e> is component 0, so sigma_z|e> = +|e>
EXCITED = 'e'
GROUND = 'g'
INTERNAL_INDEX = {EXCITED: 0, GROUND: 1}

PAULI_AXES = ('x', 'y', 'z', '+', '-')

EXPANSION_ORDER_2 = 2
EXPANSION_ORDER_4 = 4
EXPANSION_ORDER_EXACT = 'exact-cosine'
EXPANSION_ORDER_CHOICES = (
    EXPANSION_ORDER_2,
    EXPANSION_ORDER_4,
    EXPANSION_ORDER_EXACT,
)

COMMAND_SQUEEZE = 'squeeze'
COMMAND_SUPERPOSE = 'superpose'
COMMAND_GENERAL = 'general'
COMMAND_VALIDATE_RWA = 'validate-rwa'
COMMAND_CONVENTIONS = 'conventions'
COMMAND_CHOICES = (
    COMMAND_SQUEEZE,
    COMMAND_SUPERPOSE,
    COMMAND_GENERAL,
    COMMAND_VALIDATE_RWA,
    COMMAND_CONVENTIONS,
)

FORMAT_JSON = 'json'
FORMAT_CSV = 'csv'
FORMAT_CHOICES = (FORMAT_JSON, FORMAT_CSV)

SWEEP_PARAMETERS = ('eta', 'rabi_over_nu')

# Header row of every validate-rwa CSV table
SWEEP_CSV_HEADER = (
    'parameter', 'value', 'eta', 'eta_r', 'rabi', 'nu', 't_final',
    'infidelity', 'norm_drift', 'steps',
)

EXIT_OK = 0
EXIT_CONFIG_ERROR = 2
EXIT_GUARD_FAILURE = 3
