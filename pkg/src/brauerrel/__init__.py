"""Brauer relations in finite groups.

Computes the lattice K(G) of Brauer relations in the Burnside ring of a
finite permutation group, the quotient Prim(G) by imprimitive relations,
an executable classifier for which groups admit primitive relations, and
regulator constants of the trivial module.  Everything is exact: group
theory by exhaustive enumeration at desk scale, linear algebra over the
integers.
"""

from .errors import BrauerError, InternalCheckError, ResourceBoundError, ShapeError
from .perms import Permutation, format_cycles, parse_cycles
from .groups import (
    Epimorphism,
    PermGroup,
    SubgroupHandle,
    cyclic_group,
    group_from_generators,
    semidirect_product,
)
from .intlinalg import (
    AbelianInvariants,
    hnf,
    integer_kernel,
    lattice_membership,
    quotient_invariants,
    snf,
)
from .burnside import (
    BurnsideElement,
    SubgroupClassTable,
    cyclic_marks,
    deflate,
    induct,
    inflate,
    is_relation,
    multiply,
    restrict,
)
from .relations import (
    RelationLattice,
    artin_relation,
    coefficient_gcd_at_top,
    is_quasi_elementary,
    kernel_lattice,
    quasi_elementary_primes,
    solomon_relation,
)
from .primitivity import (
    PrimStructure,
    imprimitive_sublattice,
    is_imprimitive,
    prim_structure,
)
from .classify import (
    GammaGraph,
    QEDecomposition,
    Classification,
    ClassificationReport,
    build_relation,
    classify,
    gamma_graph,
    qe_decomposition,
    signatures,
    primitive_generators,
    verify_classification,
)
from .regulator import (
    RegulatorValue,
    has_critical_subquotient,
    has_nonzero_ordl,
    ord_l_functional,
    regulator_constant_trivial,
)
from .catalog import (
    CorpusEntry,
    extended_corpus,
    group_from_file,
    parse_group_spec,
    standard_corpus,
)

__version__ = "0.1.0"
