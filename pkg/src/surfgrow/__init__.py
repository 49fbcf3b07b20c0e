"""Nearest-neighbor encoding circuits for rotated surface codes.

Generates depth d + (d mod 2) encoders for any distance d >= 2 by
composing canonical base encoders with pattern-derived growth stages,
and machine-certifies encoding correctness, signs, depth, locality,
and gate counts. A census oracle backs the depth-2 lower bound for
each growth step.
"""

__version__ = "0.1.0"

from .circuit import Circuit, Layer, Marker, parse_text
from .code import Coord, RotatedSurfaceCode, build_code, embed
from .errors import (
    ConfigError,
    NonUnitarityError,
    ParseError,
    SurfgrowError,
    SynthesisError,
    ValidationError,
    VerificationError,
)
from .flow import (
    EncodingCertificate,
    FlowState,
    SingleQubitFrame,
    StageCertificate,
    verify_encoding,
    verify_generated,
    verify_growth_step,
)
from .gates import Gate, cx, reset_x, reset_z, s_dag
from .oracle import (
    ImpossibilityRecord,
    LowWeightCensus,
    depth1_growth_impossible,
    low_weight_census,
)
from .pauli import Membership, PauliOperator, StabilizerSet, rank
from .synth import (
    EncoderStats,
    GrowthPattern,
    StageCountReport,
    base_encoder,
    encoder_stats,
    expected_depth,
    full_encoder,
    growth_pattern,
    growth_stage,
    input_qubit,
    stage_count_report,
)

__all__ = [
    "Circuit",
    "ConfigError",
    "Coord",
    "EncoderStats",
    "EncodingCertificate",
    "FlowState",
    "Gate",
    "GrowthPattern",
    "ImpossibilityRecord",
    "Layer",
    "LowWeightCensus",
    "Marker",
    "Membership",
    "NonUnitarityError",
    "ParseError",
    "PauliOperator",
    "RotatedSurfaceCode",
    "SingleQubitFrame",
    "StabilizerSet",
    "StageCertificate",
    "StageCountReport",
    "SurfgrowError",
    "SynthesisError",
    "ValidationError",
    "VerificationError",
    "base_encoder",
    "build_code",
    "cx",
    "depth1_growth_impossible",
    "embed",
    "encoder_stats",
    "expected_depth",
    "full_encoder",
    "growth_pattern",
    "growth_stage",
    "input_qubit",
    "low_weight_census",
    "parse_text",
    "rank",
    "reset_x",
    "reset_z",
    "s_dag",
    "stage_count_report",
    "verify_encoding",
    "verify_generated",
    "verify_growth_step",
]
