"""Exact workbench for quiver mutation, foldings, folded cluster
structures, and the punctured-disk triangulation model."""

from .qcore import (
    Quiver,
    automorphisms,
    canonical,
    enumerate_class,
    from_arrows,
    from_json,
    from_matrix,
    is_mutation_equivalent,
    mutate,
    relabel,
    to_json,
)

__all__ = [
    "Quiver",
    "automorphisms",
    "canonical",
    "enumerate_class",
    "from_arrows",
    "from_json",
    "from_matrix",
    "is_mutation_equivalent",
    "mutate",
    "relabel",
    "to_json",
]
