"""
Default static settings for the fracdim2d app
All settings variables can be overridden in your django project settings.py

See fracdim2d/settings.py for dynamic settings.
"""

# List of import paths to function source plug-in modules
FRACDIM2D_SOURCES = [
    "fracdim2d.sources.builtin",
    "fracdim2d.sources.generating",
    "fracdim2d.sources.weierstrass",
]

# Quadrature: panels per axis and grading exponent.
# None means 2 when an order is below 1, otherwise 1.
FRACDIM2D_PANELS = 128
FRACDIM2D_GRADING = None

# Error budget reported with every integral: C * scale * panels ** -order
FRACDIM2D_QUAD_ORDER = 2
FRACDIM2D_QUAD_CONSTANT = 1.0

# Number of pieces of the limit construction evaluated exactly
FRACDIM2D_T_DEPTH = 24
# Compatibility check of the generating function phi(a0, y) == phi(a1, y)
FRACDIM2D_COMPAT_TOLERANCE = 1e-12
FRACDIM2D_COMPAT_SAMPLES = 65

# A coordinate counts as rational when it equals a fraction
# with a denominator up to this bound
FRACDIM2D_RATIONAL_DENOMINATOR = 10 ** 6

# Oracle size limits
FRACDIM2D_BRUTEFORCE_MAX_NODES = 16
FRACDIM2D_ORACLE_MAX_CELLS = 2 ** 14

# Box counting
FRACDIM2D_MIN_FIT_POINTS = 3
# minimum number of sample nodes per axis inside a delta-cell
FRACDIM2D_MIN_CELL_NODES = 2
