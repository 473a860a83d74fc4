"""Finite endomorphic presentations (L-presentations) of groups."""

from .freegroup import FreeEndomorphism, Generator, Letter, Word
from .lpres import FinitePresentation, LPresentation, expand, hnn_embed
from .theorem1 import CertificateSet, derive_lpres

__all__ = [
    "CertificateSet",
    "FinitePresentation",
    "FreeEndomorphism",
    "Generator",
    "LPresentation",
    "Letter",
    "Word",
    "derive_lpres",
    "expand",
    "hnn_embed",
]
