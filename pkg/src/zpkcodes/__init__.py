"""Linear codes over Z_{p^k}: homogeneous weights, coset graphs and two-weight searches."""

from .codes import (
    Code,
    GuardExceeded,
    StandardForm,
    check_weight_form,
    dual_hamming_distance,
    enumerate_codewords,
    hamming_weight_distribution,
    hom_weight_distribution,
    is_projective,
    is_proper_hom,
    is_regular,
    standard_form,
    two_weight_profile,
)
from .graph import (
    CosetGraph,
    SrgReport,
    build_coset_graph,
    check_srg_relations,
    degree_formula_check,
    lambda_comparison,
    lambda_mu_identities,
    measure_srg,
    spectrum_via_dual_weights,
    srg_report,
    verify_character_eigenvectors,
)
from .ring import (
    RingSpec,
    char_value,
    gamma,
    hom_weight,
    hom_weight_via_characters,
    lemma_unit_sum_formula,
    unit_sum_reps,
    units,
)
from .search import (
    SearchSpace,
    classify,
    column_orbit_reps,
    contrast_search_z4,
    enumerate_codes,
    sweep,
    verify_nonexistence,
)

__version__ = "0.1.0"
