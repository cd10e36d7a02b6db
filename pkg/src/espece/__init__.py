"""espece: an exact calculator for combinatorial species.

Species expressions evaluate to exact counting sequences and to explicit
labelled structures carrying their symmetric-group actions; on top of
that the package counts and enumerates equivariant natural families,
verifies canonical isomorphisms degreewise, computes terminal machines
for adjoint dynamics at the counting level, and iterates fixpoint chains
for formal differential operators.
"""

from .counting import (
    AT_LEAST_HORIZON,
    NO_CONTACT,
    ConvergenceReport,
    CountSeq,
    EgfSeq,
    contact_at_least,
    contact_order,
    count_seq,
    detect_convergence,
    egf,
    seq_cauchy,
    seq_derive,
    seq_hadamard,
    seq_substitute_egf,
    seq_sum,
)
from .diffeq import ChainReport, DiffOperator, adamek_chain, apply_operator, fixpoint_check
from .groups import (
    FiniteAction,
    Permutation,
    SubgroupElements,
    actions_isomorphic,
    all_permutations,
    count_equivariant_maps,
    enumerate_equivariant_maps,
    fixed_points,
    generators,
    orbits,
    stabilizer,
)
from .automata import (
    AdjLDyn,
    DeriveDyn,
    DeriveLDyn,
    MealyAutomaton,
    MooreAutomaton,
    PointingDyn,
    TensorBy,
    apply_dynamics,
    check_mealy,
    check_moore,
    check_morphism,
    hom_day_counts,
    terminal_counts,
)
from .species import (
    AdjL,
    AdjR,
    Cauchy,
    Cyc,
    Derive,
    DeriveL,
    Exp,
    ExpPlus,
    Hadamard,
    Lin,
    LinPlus,
    One,
    Perm,
    Pointing,
    Representable,
    SpeciesExpr,
    Subsets,
    Substitute,
    Sum,
    Table,
    TruncLeft,
    TruncRight,
    X,
    Zero,
    act,
    as_table,
    cardinality,
    degree_budget,
    enumerate_degree,
    validate,
)
from .transforms import (
    NatTrans,
    PartialAlgebra,
    build_nat,
    canonical_iso_suite,
    check_monoid,
    check_naturality,
    count_nat,
    enumerate_nat,
    exp_algebra,
    identity_nat,
    iso_check,
    lin_concat_mu,
    one_algebra,
    tensor_partial_algebras,
    uniform_subset_coalgebras,
)

__version__ = "0.1.0"
