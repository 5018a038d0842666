"""Grothendieck groups of finitely presented exact categories and of
monomial quiver algebras, and the classification of their dense
(co)resolving subcategories by subgroups of K0."""

from .abelian import (
    BoundExceeded,
    FgAbelianGroup,
    GroupElement,
    InfiniteGroup,
    InfinitelyMany,
    Subgroup,
    contains,
    count_divisors,
    enumerate_subgroups,
    group_from_relations,
    has_finitely_many_subgroups,
    invariant_factors,
    quotient,
    subgroup_generated,
    subgroups_containing,
)
from .cartan import (
    CartanReport,
    InfiniteDimensional,
    QuiverAlgebra,
    cartan_matrix,
    dense_resolving_count,
    nonzero_paths,
)
from .excat import (
    DenseClass,
    ExactCatPresentation,
    IncompleteSES,
    K0Result,
    classify,
    f_subgroup,
    g_membership,
    generator_image,
    k0,
    verify_bijection,
    verify_generator,
)
from .intlinalg import IntMatrix, hnf, lattice_member, snf

__version__ = "0.1.0"
