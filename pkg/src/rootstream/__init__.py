"""Multi-stream PRNG built on a shared linear congruential root.

Every stream is an additive offset of one root LCG orbit, so any stream
position is reachable in O(log k) jumps and a batched backend can serve
all streams from a single root pass. Raw leaves correlate strongly by
construction; the output stage (xorshift decorrelation plus an
xorshift-rotate permutation) removes that, and the stats module measures
the removal.
"""

from .lcg import (
    AdvanceParams,
    LcgParams,
    MULTIPLIER,
    PAPER_PARAMS,
    REFERENCE_INCREMENT,
    STRICT_INCREMENT,
    STRICT_PARAMS,
    ScaledLcg,
    advance_params,
    lcg_jump,
    lcg_step,
    scaled_period,
    truncate_high32,
    validate_full_period,
)
from .montecarlo import (
    OptionPrice,
    OptionSpec,
    PiEstimate,
    estimate_pi,
    gaussian_pair,
    mc_option_price,
)
from .output import MODES, OutputMode, Scramble, mode_name, scramble_word, xsh_rr
from .state_share import (
    RootBlockCache,
    RootGenerator,
    default_offset_for,
    effective_increment,
    leaf_params,
    leaf_transition,
    validate_leaf_offset,
)
from .stats import (
    CorrelationReport,
    PairCorrelation,
    TestVerdict,
    hwd_proxy,
    kendall,
    mini_battery,
    pairwise_correlation_scan,
    pearson,
    spearman,
    verdicts_to_csv,
    verdicts_to_json,
)
from .streams import (
    GeneratorConfig,
    MultiStreamRng,
    Plan,
    Profile,
    StreamState,
    new_generator,
)
from .xorshift import (
    DEFAULT_SEED_STATE,
    Gf2Matrix128,
    SUBSTREAM_SPACING,
    Xorshift128State,
    seed_state,
    substream_for,
    xs_jump,
    xs_step,
    xs_transition_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "AdvanceParams",
    "CorrelationReport",
    "DEFAULT_SEED_STATE",
    "GeneratorConfig",
    "Gf2Matrix128",
    "LcgParams",
    "MODES",
    "MULTIPLIER",
    "MultiStreamRng",
    "OptionPrice",
    "OptionSpec",
    "OutputMode",
    "PAPER_PARAMS",
    "PairCorrelation",
    "PiEstimate",
    "Plan",
    "Profile",
    "REFERENCE_INCREMENT",
    "RootBlockCache",
    "RootGenerator",
    "STRICT_INCREMENT",
    "STRICT_PARAMS",
    "SUBSTREAM_SPACING",
    "ScaledLcg",
    "Scramble",
    "StreamState",
    "TestVerdict",
    "Xorshift128State",
    "advance_params",
    "default_offset_for",
    "effective_increment",
    "estimate_pi",
    "gaussian_pair",
    "hwd_proxy",
    "kendall",
    "lcg_jump",
    "lcg_step",
    "leaf_params",
    "leaf_transition",
    "mc_option_price",
    "mini_battery",
    "mode_name",
    "new_generator",
    "pairwise_correlation_scan",
    "pearson",
    "scaled_period",
    "scramble_word",
    "seed_state",
    "spearman",
    "substream_for",
    "truncate_high32",
    "validate_full_period",
    "validate_leaf_offset",
    "verdicts_to_csv",
    "verdicts_to_json",
    "xs_jump",
    "xs_step",
    "xs_transition_matrix",
    "xsh_rr",
]
