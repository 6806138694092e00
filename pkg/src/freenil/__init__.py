"""Exact-arithmetic computations around free nilpotent groups.

Free-group words, truncated Magnus expansions, Lyndon bases of the free
Lie algebra, weight-graded homology of the nilpotent quotients via
integer Smith normal form, Massey products dual to the Lyndon basis,
Milnor invariants of conjugation-form automorphisms, and labeled tree
diagrams mapping onto the bracket kernel.  Everything runs over exact
rings: integers, rationals, or Z/ell^M.
"""

from .rings import QQ, Ring, Zmod, ZZ
from .words import (
    Word,
    abelianization,
    commutator,
    generator,
    identity,
    invert,
    multiply,
    parse_word,
    reduce,
)
from .magnus import (
    MagnusSeries,
    coefficient,
    expand,
    lcs_depth,
    power_expand,
    series_inverse,
    series_multiply,
    series_one,
    series_power,
)
from .lyndon import (
    LyndonWord,
    NormalForm,
    commutator_word,
    d_rank,
    enumerate_lyndon,
    is_lyndon,
    lyndon_basis_through,
    lyndon_commutator_word,
    normal_form,
    standard_factorization,
    witt_rank,
)
from .lie import (
    DkKernel,
    LieElement,
    TensorElement,
    bracket,
    decompose,
    dk_kernel_basis,
    group_graded_decompose,
    lyndon_bracket_tensor,
)
from .koszul import (
    HomologyResult,
    ReductionMap,
    WeightGradedComplex,
    build_complex,
    h3_weight_rank_formula,
    homology,
    orr_pi3_rank,
    reduction_map,
    table3_cell,
)
from .massey import (
    DefiningSystem,
    defining_system_check,
    dual_basis_matrix,
    general_massey_evaluate,
    magnus_system_on_generators,
    massey_evaluate,
)
from .galois import (
    GaloisAutomorphism,
    apply,
    boundary_word,
    compose,
    identity_automorphism,
    ihara_consistency,
    johnson_depth,
    milnor_invariant,
    n2_report,
    obstruction_tower,
    random_kernel_automorphism,
    realize_classes,
    tau_vanishes,
    theta_cocycle_vanishes,
    theta_defined,
    twist,
    x0_constraint_report,
)
from .jacobi import (
    DiagramSpace,
    JacobiDiagram,
    canonicalize,
    caterpillar,
    ct_dimension,
    palindromic_vanishing,
    phi_in_kernel,
    phi_map,
    strut,
)
from .tables import (
    cyclotomic_identity_check,
    d_rank_identity_check,
    d_table,
    h3_table,
    render_tsv,
    witt_table,
)

__version__ = "0.1.0"
