"""Exact multilinear algebra and entanglement classification for pure
three-fermion states with six to nine single-particle modes."""

__version__ = "0.1.0"

from .exterior import (AltTensor, GroupElement, SubsetIndexer, canonical_state,
                       embed_qudits, embed_three_qubits, embed_three_qutrits,
                       interior, is_primitive, join_seven, pairing,
                       slocc_apply, split_seven, star, symplectic_pairing,
                       wedge)
from .scalars import GaussianRational, TolerancePolicy
from .classify import ClassLabel, classify, is_separable

__all__ = [
    "AltTensor", "ClassLabel", "GaussianRational", "GroupElement",
    "SubsetIndexer", "TolerancePolicy", "canonical_state", "classify",
    "embed_qudits", "embed_three_qubits", "embed_three_qutrits", "interior",
    "is_primitive", "is_separable", "join_seven", "pairing", "slocc_apply",
    "split_seven", "star", "symplectic_pairing", "wedge",
]
