"""Exact word-problem oracles used to certify generated relators."""

from .dyadic import (
    BS12_IMAGES,
    BS12_SQUARED_IMAGES,
    AffineMap,
    DyadicRational,
    builtin_images,
    dyadic_eval,
)
from .grigorchuk import grig_is_trivial, grig_normalize, grig_sections, grig_witness
from .snf import exponent_vector, in_relator_lattice, lattice_solve, snf
from .verify import (
    AbelianOracle,
    PullbackMap,
    VerificationReport,
    dyadic_oracle,
    grigorchuk_oracle,
    pullback,
    verify_lpres,
)

__all__ = [
    "AbelianOracle",
    "AffineMap",
    "BS12_IMAGES",
    "BS12_SQUARED_IMAGES",
    "DyadicRational",
    "PullbackMap",
    "VerificationReport",
    "builtin_images",
    "dyadic_eval",
    "dyadic_oracle",
    "exponent_vector",
    "grig_is_trivial",
    "grig_normalize",
    "grig_sections",
    "grig_witness",
    "grigorchuk_oracle",
    "in_relator_lattice",
    "lattice_solve",
    "pullback",
    "snf",
    "verify_lpres",
]
