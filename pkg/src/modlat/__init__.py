"""modlat: exact-arithmetic submodule lattices over finite local algebras.

Rings are finite commutative local F_p-algebras (or finite products of
them); modules are finite; every enumeration is exact and deterministic and
is cross-validated against brute-force oracles in the test suite.
"""

__version__ = "0.1.0"

from .rings import (
    LocalAlgebra,
    Ideal,
    make_local_algebra,
    truncated_polynomial_ring,
    chain_ring,
    prime_field,
    ideal_span,
    ideal_combine,
    graded_piece_dim,
    enumerate_ideals,
)
from .modules import (
    ProductRing,
    MaximalIdeal,
    FiniteModule,
    ProductModule,
    Submodule,
    ProductSubmodule,
    SubmoduleLattice,
    make_module,
    regular_module,
    zero_module,
    quotient_ring_module,
    direct_sum,
    span_submodule,
    submodule_from_basis,
    submodule_sum,
    submodule_intersection,
    submodule_as_module,
    quotient,
    hom_space,
    socle,
    length,
    annihilator,
    associated_primes,
    primary_components,
    enumerate_submodules,
    maximal_ideals,
)
from .classify import (
    ClassificationReport,
    classify,
    is_uniserial,
    is_meager,
    meager_fast_path,
    discriminating_atoms,
    classify_single_prime,
)
from .matlis import (
    InjectiveHull,
    MatlisDual,
    DualityCertificate,
    Distance,
    injective_hull,
    matlis_dual,
    double_dual_certificate,
    zeta,
    zeta_involution_holds,
    submodule_distance,
    continuity_audit,
)
from .tower import (
    TowerSpec,
    Tower,
    IdealTree,
    HilbertSamuelProfile,
    CardinalityPrediction,
    make_tower,
    hilbert_samuel_profile,
    ideal_tree,
    branching_report,
    pair_growth,
    predict_cardinality,
    square_quotient_embedding,
)
from .cardinal import SymbolicCardinal
from .zmodule import (
    MinimaxDescriptor,
    parse_descriptor,
    is_minimax,
    artinian_quotient,
    count_submodules,
    is_meager_z,
    ordinal_length_class,
    uniserial_z,
    truncation_crosscheck,
    support_growth_shadow,
)
