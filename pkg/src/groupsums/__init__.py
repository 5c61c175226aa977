"""Exact subset-sum sets and exhaustive cover verifiers for finite abelian groups."""

__version__ = "0.1.0"

from .groups import (
    AbelianGroup,
    GroupElement,
    GroupSpecError,
    GroupSubset,
    count_halvings,
    cyclic_units,
    enumerate_groups_of_order,
    invariant_factors,
    is_generating,
    parse_group_spec,
    subgroup_generated,
    torsion_two,
    unit_permutation,
)
from .subsets import h_hat, naive_subset_sums, pair_cover, sigma
from .constructions import (
    ConstructionError,
    even_counterexample,
    near_tight_construction,
    tight_example,
    two_mod_four_counterexample,
)
from .verify import (
    REFUTED,
    VACUOUS,
    VERIFIED,
    BudgetExceededError,
    CriticalNumberNotFound,
    Verdict,
    critical_number,
    search_lemma2_counterexamples,
    sweep,
    verify_pair_cover_threshold,
    verify_subset_sum_bound,
    verify_three_fold_cover,
)

__all__ = [
    "__version__",
    "AbelianGroup",
    "GroupElement",
    "GroupSpecError",
    "GroupSubset",
    "count_halvings",
    "cyclic_units",
    "enumerate_groups_of_order",
    "invariant_factors",
    "is_generating",
    "parse_group_spec",
    "subgroup_generated",
    "torsion_two",
    "unit_permutation",
    "h_hat",
    "naive_subset_sums",
    "pair_cover",
    "sigma",
    "ConstructionError",
    "even_counterexample",
    "near_tight_construction",
    "tight_example",
    "two_mod_four_counterexample",
    "REFUTED",
    "VACUOUS",
    "VERIFIED",
    "BudgetExceededError",
    "CriticalNumberNotFound",
    "Verdict",
    "critical_number",
    "search_lemma2_counterexamples",
    "sweep",
    "verify_pair_cover_threshold",
    "verify_subset_sum_bound",
    "verify_three_fold_cover",
]
