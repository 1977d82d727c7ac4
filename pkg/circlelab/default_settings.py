# Maximum number of lattice points any single enumeration may visit
ENUMERATION_BUDGET = 10 ** 9

# Maximum number of candidates tried by the rational-approximation search in classify
SEARCH_BUDGET = 10 ** 6

# Maximum number of alpha grid points evaluated by one exponential sum sweep
ALPHA_GRID_BUDGET = 10 ** 6

# Points per axis of the alpha grid used for the minor arc integral
MINOR_ARC_GRID = 256

# Maximum number of residue tuples enumerated for one complete character sum
RESIDUE_BUDGET = 10 ** 7

# Points evaluated per numpy chunk; results are bit-identical for a fixed chunk size
CHUNK_SIZE = 1 << 18

# Rows per convolution block when combining value tables
TABLE_BLOCK_ROWS = 1 << 21

# Largest number of key pairs one sparse table convolution may form
TABLE_PAIR_BUDGET = 10 ** 8

# Worker threads used by the chunked executor (1 disables the pool)
THREADS = 1

# Bits of working precision added on top of a double when computing embeddings
EMBEDDING_EXTRA_PRECISION = 64

# Polynomials up to this degree are factored over ZZ to prove irreducibility
FIELD_DEGREE_BOUND = 12

# Relative tolerance for floating point identity checks
IDENTITY_TOLERANCE = 1e-8

# Conductors up to this size are accumulated as exact cyclotomic integers
EXACT_CONDUCTOR_MAX = 16

# Primes used by the finite field dimension fit of the singular loci
BD_PRIMES = [3, 5, 7, 11, 13, 17]

# Largest q**s enumerated by the finite field dimension fit
BD_POINT_BUDGET = 2 * 10 ** 6

# Tolerance on the fitted dimension before it is declared inconclusive
BD_FIT_TOLERANCE = 0.35

# Stand-in for the exponent e(d) of the dyadic approximation levels
E_EXPONENT = 0

# Truncation parameters of the singular series
SERIES_H = 16
SERIES_PRIME_CUTOFF = 50
SERIES_DEPTH = 3

# Truncation and quadrature of the singular integral
INTEGRAL_H = 8
QUADRATURE_NODES = 24
OUTER_PANEL_NODES = 12
OUTER_MAX_DIMENSION = 2
OUTER_MC_SAMPLES = 20000
QUADRATURE_BUDGET = 4 * 10 ** 6
J_TOLERANCE = 1e-6

# Real density estimator
DENSITY_EPSILON = 0.05
DENSITY_SAMPLES = 10 ** 6
DENSITY_BATCH = 1 << 17

# Seed for every random number generator
SEED = 20240917

# Report files are written here unless overridden on the command line
OUTPUT_DIR = 'circle-lab-out'
