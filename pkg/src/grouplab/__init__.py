"""Finite-group computation engine for modularity-based subgroup analysis.

Subpackages: permgroup (groups and builders), lattice (subgroup lattices),
structure (series and structural predicates), classes (group-class oracles
and subnormality), submodular (the core embedding predicates), harness
(corpus and verification suites), cli (command-line frontend).
"""
from .permgroup import (FiniteGroup, GroupError, OrderCapExceeded, ParseError,
                        Permutation, direct_product, generate, group_from_spec,
                        named_group, quotient)
from .lattice import Subgroup, SubgroupLattice, all_subgroups

__version__ = "0.1.0"

__all__ = [
    "FiniteGroup", "GroupError", "OrderCapExceeded", "ParseError",
    "Permutation", "Subgroup", "SubgroupLattice", "all_subgroups",
    "direct_product", "generate", "group_from_spec", "named_group",
    "quotient", "__version__",
]
