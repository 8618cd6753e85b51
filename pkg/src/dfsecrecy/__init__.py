"""Secrecy outage analysis of decode-and-forward relay wiretap systems."""

from .analytic import (
    AsymptoticResult,
    OrderingReport,
    ordering_predicates,
    slope_fixed_eve,
    slope_scaled_eve,
    sop_asymptotic,
    sop_closed_form,
    sop_limit,
)
from .capacity import (
    CapacityBreakdown,
    capacity_case1,
    capacity_case1_conventional,
    capacity_case2,
    capacity_case3,
    end_to_end_capacity,
)
from .channel import ChannelDraw, SampleStream, sample_draw, sample_exponential_unit
from .core import (
    CaseId,
    RateThreshold,
    ScenarioScaling,
    SnrTriple,
    ValidationError,
    db_to_linear,
    linear_to_db,
    snr_from_power,
    snrs_from_scenario,
)
from .montecarlo import (
    SopEstimate,
    estimate_sop,
    estimate_sop_adaptive,
    estimate_sop_paired,
    wilson_interval,
)
from .sweep import SweepRow, SweepSpec, fit_diversity_order, read_table, run_sweep, write_table

__version__ = "0.1.0"
