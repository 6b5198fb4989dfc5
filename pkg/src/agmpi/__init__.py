"""Arbitrary-precision pi via the AGM iteration and the Borwein iterations."""

from .agm import agm_init, agm_limit, agm_output, agm_step, run_brent_salamin
from .fixedpoint import BigFixed, PrecisionContext

__all__ = [
    "BigFixed",
    "PrecisionContext",
    "agm_init",
    "agm_limit",
    "agm_output",
    "agm_step",
    "run_brent_salamin",
]
__version__ = "0.1.0"
