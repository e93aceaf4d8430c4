"""Perfect splitter sets B[-k1, k2](q): verification, search, criteria and constructions."""

from .criteria import (
    construct_1mod8,
    construct_5mod8,
    construct_b13,
    criterion_b13,
    dichotomy_check,
    divisibility_necessary,
    nonsingular_reduction,
    purely_singular_power,
    quadratic_form_check,
    quotient_consistency,
)
from .factorization import (
    IndexSet,
    check_factorization,
    complete_residues,
    coset_lift,
    index_transform,
    subgroup_reduce,
)
from .numthy import IndexContext, factorize, kth_power_residue, mult_order, primitive_root
from .search import Mode, SearchConfig, count_inequivalent, orbit_pruned_search, search_perfect
from .splitter import (
    CandidateSet,
    Classification,
    SplitterInstance,
    classify,
    is_perfect,
    multiplier_set,
    verify,
)
from .verdict import Outcome, Verdict

__version__ = "0.1.0"
