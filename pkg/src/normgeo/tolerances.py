"""Numerical thresholds used throughout the package.

Two grades of tolerance: EQ_TOL for quantities reached by closed forms,
extreme-point enumeration, or spectral decompositions; SAMPLE_TOL whenever a
sampled-and-refined search is part of the computation. Every Verdict records
which grade it was judged at.
"""

# Closed-form / exact-path equality tolerance.
EQ_TOL = 1e-9

# Sampled / refined-path tolerance.
SAMPLE_TOL = 1e-6

# Width threshold separating a singleton sublevel interval (strong orthogonality)
# from a genuine flat segment. Strict minima certify at ~1e-12 (bisection
# resolution) up to ~1e-7 (float noise over quadratic growth), flat segments in
# the catalog come out at 0.1 or wider, so the two classes sit four orders of
# magnitude to either side of this line.
SB_WIDTH = 1e-6

# Default relative tolerance for membership in a norm-attainment set.
ATTAIN_TOL = 1e-4

# Linear-dependence threshold: sigma_2/sigma_1 of the stacked pair.
DEP_RATIO = 1e-8

# Target width for golden-section and bisection brackets.
BRACKET_WIDTH = 1e-12

# Default seed for every randomized component.
DEFAULT_SEED = 2019
