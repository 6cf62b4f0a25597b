"""Shared numeric tolerances, one per evaluation path.

Keeping these separate distinguishes representation error from a genuine
failure of an identity: closed-form results are compared at TOL_EXACT, while
anything that went through a grid convolution only earns TOL_GRID.
"""

TOL_EXACT = 1e-9
TOL_GRID = 1e-3
TOL_METRIC = 1e-4
