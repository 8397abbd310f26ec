"""Analytical performance bounds for fault-tolerant QEC cycles,
validated by a built-in circuit-level Monte Carlo simulator.

The package covers CSS stabilizer codes measured with flag-based
syndrome-extraction gadgets: exact code-level error probabilities and
decoder-profile upper bounds, fault-count statistics of repeat-until-quiet
extraction, refined decoding-failure and residual-error bounds, and a
vectorized Pauli-frame simulator that reproduces the same quantities by
direct sampling.
"""

from .bounds import (
    A_RES_MODES,
    PROFILE_KINDS,
    BoundInputs,
    DecoderProfile,
    NoiseModel,
    RefinedBoundTerms,
    beta_profile,
    bounded_distance_profile,
    codeword_error_exact,
    enumerator_profile,
    fault_count_pmf,
    occupancy_pmf,
    qec_upper_bound,
    refined_bound_terms,
    refined_decoding_bound,
    residual_lower_bound,
    residual_q,
    residual_upper_bound,
    round_count_pmf,
    simple_decoding_bound,
    total_failure_bound,
)
from .codes import (
    FAMILIES,
    LAYOUT_FAMILIES,
    CodeConstructionError,
    CodeProfile,
    EnumeratorUnavailableError,
    StabilizerCode,
    UnsupportedCodeError,
    build_code,
    code_profile,
    weight_enumerator,
)
from .decoders import (
    MatchingDecoder,
    SyndromeLUT,
    build_lookup_decoder,
    build_matching_decoder,
    compute_beta,
    decode_success,
    mwpm_decode,
)
from .figures import FIGURE_IDS, FIGURES, figure_rows, plotted_beta, reference_series
from .frames import FAULT_KINDS, FaultLocation, PauliFrame, conjugate_through, sample_fault
from .gadgets import (
    ExtractionGadget,
    FlagTable,
    build_flag_table,
    build_gadget,
    build_round,
    fault_effects,
    flag_decode,
    run_gadget,
)
from .layouts import (
    KINDS,
    SCHEMES,
    FtLayout,
    GadgetSpec,
    UnsupportedLayoutError,
    build_layout,
    faulty_locations,
    n_flag,
)
from .simulate import (
    METRICS,
    ORDERS,
    CycleOutcome,
    TrialStats,
    counter_uniforms,
    estimate,
    execution_order,
    final_decoder,
    run_cycle,
    wilson_interval,
)

__version__ = "0.1.0"
