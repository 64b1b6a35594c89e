"""Channel simulation, baselines and error-rate estimation."""

from .channel import (
    ChannelRealization,
    db_to_linear,
    draw_channel,
    ebn0_from_snr,
    hopf_project,
    ml_detect,
    snr_from_ebn0,
    transmit,
)
from .codebook import (
    Codebook,
    CodebookError,
    grasslattice_codebook,
    load_codebook,
    min_chordal_curve,
    min_chordal_distance,
    pairwise_chordal,
    save_codebook,
)
from .defaults import default_alpha
from .montecarlo import (
    AlphaSweep,
    ErrorStats,
    StopRule,
    point_rng,
    required_ebn0,
    run_error_rate,
    run_ml_error_rate,
    sweep_alpha,
)
from .pilot import QAM, default_power_split, pilot_baseline, pilot_block, pilot_rate, sweep_power_split
