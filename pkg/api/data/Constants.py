VERSION="0.3.0"
TOOL_NAME="wormchain"

# Enumeration caps
MAX_EDGES_ENUMERATION=22
MAX_VERTICES_SPIN_SUM=20
MAX_STATES_SPECTRAL=50000
MAX_TV_ITERATIONS=1000000
MAX_CONGESTION_PAIRS=5000000

# Oracle comparison tolerances
RELATIVE_TOLERANCE=1e-10
ABSOLUTE_TOLERANCE=1e-14
SMALL_BETA_TOLERANCE=1e-5
BETA_X_TOLERANCE=1e-15
MATRIX_TOLERANCE=1e-12
STATIONARITY_TOLERANCE=1e-10

# Decay-rate fit of the worst-start TV distance
FIT_FLOOR=1e-11
FIT_WINDOW=10

# Sampling
BATCH_COUNT=32
CHUNK_SIZE=65536
MEDIAN_TRICK_DELTA=0.25

GRAPH_KINDS=["cycle", "path", "complete", "grid"]
SUBCOMMANDS=["verify", "exact", "sample", "estimate", "spectral", "congestion"]
TARGETS=["chi", "corr"]

THREADS_ENV_VAR="WORMCHAIN_THREADS"
SLOW_TESTS_ENV_VAR="WORMCHAIN_SLOW"

# CLI defaults
DEFAULT_SAMPLE_STEPS=1000000
DEFAULT_EPSILON=0.1
DEFAULT_DELTA=0.25
DEFAULT_MIXING_DELTAS=[0.25, 0.01]
CHI_SQUARE_P_THRESHOLD=1e-3

EXIT_PASS=0
EXIT_FAIL=1
EXIT_USAGE=2
