"""Exact mod-2 Lambda algebra engine with a certified chain-level
verifier for the rank-5 algebraic transfer."""

from . import (  # noqa: F401
    catalog,
    divided_power,
    elements_io,
    f2core,
    homology,
    lambda_algebra,
    transfer,
)

__version__ = "0.1.0"
