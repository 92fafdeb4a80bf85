"""seqderiv: sequential secant and cord derivatives of real functions.

Compute difference quotients along decaying step sequences, estimate the
closed sets of their subsequential limits, and predict those sets
analytically for a gallery of reference functions.
"""

__version__ = "0.1.0"

from .errors import SeqDerivError
from .extreal import POS_INF, NEG_INF, ClosedExtSet, chart, chart_distance, hausdorff

__all__ = [
    "SeqDerivError",
    "POS_INF",
    "NEG_INF",
    "ClosedExtSet",
    "chart",
    "chart_distance",
    "hausdorff",
    "__version__",
]
