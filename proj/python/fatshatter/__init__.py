"""Finite-class uniform convergence toolkit.

Thin Python surface over the C++ core: combinatorial dimensions, separated
nets and packings, chaining decompositions, Rademacher tail estimation, and
sample-complexity bound evaluation.
"""

from ._core import (
    BoundConstants,
    ChainStructure,
    ChainVerification,
    ConfigError,
    Distribution,
    EmpiricalRestriction,
    FunctionClass,
    RademacherLaw,
    SeparatedNet,
    ShatterCertificate,
    SizeLimitError,
    TailEstimate,
    build_chain,
    chain_depth,
    check_certificate,
    distance,
    exact_mean,
    fat_dim,
    greedy_net,
    hoeffding_tail,
    increment_halved_norm,
    is_shattered,
    legacy_sample_bound,
    make_full_binary_class,
    make_threshold_class,
    multiscale_bound,
    packing_number_exact,
    rademacher_sup_tail,
    restrict,
    rv_packing_bound,
    sup_deviation,
    sup_rademacher_tail_over_samples,
    symmetrization_threshold,
    symmetrized_deviation_tail,
    symmetrized_tail_exact,
    tail_probability_exact,
    tail_probability_mc,
    theorem_sample_bound,
    vc_dim,
    verify_chain,
    weight_schedule,
    weight_schedule_sum,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
