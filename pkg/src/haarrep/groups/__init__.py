from .core import FiniteGroup, GroupError, GroupHom, Subgroup, bits
from .named import (abelian, alternating, cyclic, dicyclic, dihedral, direct_product, generalized_dihedral,
                    group_from_generators, make_named, order18_exceptional, quaternion, semidirect, symmetric)
from .structure import (center, centralizer, closure, conjugacy_classes, derived_subgroup, element_order,
                        is_normal, normal_subgroups, normal_subgroups_with_simple_quotient, quotient,
                        structure_queries)
from .iso import automorphism_generators, find_isomorphism, fingerprint, is_isomorphic
from . import catalog

__all__ = [
    "FiniteGroup", "GroupError", "GroupHom", "Subgroup", "bits",
    "abelian", "alternating", "cyclic", "dicyclic", "dihedral", "direct_product", "generalized_dihedral",
    "group_from_generators", "make_named", "order18_exceptional", "quaternion", "semidirect", "symmetric",
    "center", "centralizer", "closure", "conjugacy_classes", "derived_subgroup", "element_order", "is_normal",
    "normal_subgroups", "normal_subgroups_with_simple_quotient", "quotient", "structure_queries",
    "automorphism_generators", "find_isomorphism", "fingerprint", "is_isomorphic", "catalog",
]
