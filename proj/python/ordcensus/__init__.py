"""Order and equidistribution censuses over finite fields."""

from ordcensus._core import (
    classify_prime,
    cyclotomic_eval,
    ell_of_q,
    factor,
    factor_int,
    factor_mod_p,
    format_fraction,
    global_lemma_check,
    order_census,
    order_record,
    period_mod_p,
    residue_histogram,
    rough_census,
    selftest,
    set_factor_seed,
)

__all__ = [
    "classify_prime",
    "cyclotomic_eval",
    "ell_of_q",
    "factor",
    "factor_int",
    "factor_mod_p",
    "format_fraction",
    "global_lemma_check",
    "order_census",
    "order_record",
    "period_mod_p",
    "residue_histogram",
    "rough_census",
    "selftest",
    "set_factor_seed",
]
