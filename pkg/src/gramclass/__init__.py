"""Classification of connected non-negative unit forms of Dynkin type A up
to strong Gram congruence, with explicit congruence matrices."""

from .congruence import (
    CongruenceCertificate,
    PseudoMorphism,
    congruence_between,
    congruence_forms,
    congruence_to_standard,
    triangular_flip,
    verify,
)
from .exactmat import IntMatrix, PolyZ
from .quiver import Permutation, Quiver, Walk
from .standard import count_classes, partitions_part1, standard_quiver
from .unitform import UnitForm, classify, from_quiver, realize_as_quiver

__version__ = "0.1.0"

__all__ = [
    "CongruenceCertificate",
    "IntMatrix",
    "Permutation",
    "PolyZ",
    "PseudoMorphism",
    "Quiver",
    "UnitForm",
    "Walk",
    "classify",
    "congruence_between",
    "congruence_forms",
    "congruence_to_standard",
    "count_classes",
    "from_quiver",
    "partitions_part1",
    "realize_as_quiver",
    "standard_quiver",
    "triangular_flip",
    "verify",
]
