"""Global numeric tolerances.

A single absolute tolerance governs state equality, orthogonality and
sharpness everywhere in the library.  Partition-of-unity sums are held to a
tighter budget because they only accumulate rounding noise.
"""

import os

DEFAULT_TOL = 1e-9
PARTITION_SUM_TOL = 1e-12


def tol() -> float:
    """Comparison tolerance; the CT_TOL environment variable overrides it."""
    raw = os.environ.get("CT_TOL")
    return float(raw) if raw else DEFAULT_TOL
