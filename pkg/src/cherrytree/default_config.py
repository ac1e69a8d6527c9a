"""
Default configuration used across Cherrytree: generators, oracles, witness search and file formats.

Every knob that is not given explicitly by the caller (or on the command line) falls back to one of these values.
"""

# Randomness
DEFAULT_SEED = 0
DEFAULT_ATTEMPTS = 64

# GF(2) oracle
BRUTE_FORCE_MAX_EDGES = 24

# Strong LDC verification, decoding checked over all 2^k messages up to that k
EXHAUSTIVE_LIMIT = 12
EXHAUSTIVE_CHUNK = 256

# Generators
HADAMARD_MIN_K = 2
HADAMARD_MAX_K = 20
HADAMARD_PARTNER_TRIES = 64
HYPERCUBE_MIN_K = 1
HYPERCUBE_MAX_K = 20
RANDOM_TRIES_PER_EDGE = 64

# Signature graph
CLAIM24_EXHAUSTIVE_K = 6
CLAIM24_SAMPLES = 10_000

# Witness search
DEFAULT_GROWTH_FACTOR = 2
DEFAULT_ROOT_ATTEMPTS = 16
DEFAULT_WORKERS = 1

# File formats
CHEG_MAGIC = "cheg"
CHEG_VERSION = 1
SLDC_MAGIC = "sldc"
SLDC_VERSION = 1
