"""Exact Jack-polynomial machinery and beta-ensemble averages.

A symmetric-function core (partitions, bases, the alpha-deformed scalar
product, Jack polynomials) feeds closed-form Gaussian and chiral ensemble
averages, explicit-variable lowering operators and their exponentials,
truncated multivariate hypergeometric series, Monte Carlo samplers, and a
floating-point Airy edge-limit verifier.  A command-line runner exposes the
individual computations plus a full verification suite.
"""

from .partitions import Partition, parse_partition
from .symfunc import Basis, SymFunc, jack
from .moments import EnsembleKind, EnsembleSpec, average, jack_average

__all__ = [
    "Partition",
    "parse_partition",
    "Basis",
    "SymFunc",
    "jack",
    "EnsembleKind",
    "EnsembleSpec",
    "average",
    "jack_average",
]

__version__ = "0.1.0"
