"""Request and response models for the HTTP service."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field

OutputFormat = Literal["text", "url", "records"]

DEFAULT_MAX_PATTERN_DISTANCE = 25


class GenerateRequest(BaseModel):
    distance: int = Field(ge=2, description="Target code distance")
    kind: Literal["encoder", "stage"] = "encoder"
    format: OutputFormat = "text"
    include_markers: bool = True
    max_pattern_distance: int = Field(
        DEFAULT_MAX_PATTERN_DISTANCE, ge=2,
        description="Refuse distances above this bound")


class GenerateResponse(BaseModel):
    distance: int
    kind: str
    format: OutputFormat
    content: str
    qubits: int
    depth: int
    cx_count: int
    local: bool
    input_qubit: int | None


class VerifyRequest(BaseModel):
    distance: int | None = Field(None, ge=2)
    circuit_text: str | None = None
    strict: bool = False
    max_pattern_distance: int = Field(DEFAULT_MAX_PATTERN_DISTANCE, ge=2)


class LogicalFrameModel(BaseModel):
    x_axis: str
    x_sign: int
    z_axis: str
    z_sign: int
    text: str


class VerifyResponse(BaseModel):
    distance: int
    qubits: int
    input_qubit: int | None
    ok: bool
    group_match: bool
    sign_match: bool
    logical_frame: LogicalFrameModel | None
    depth: int
    expected_depth: int
    depth_match: bool
    local: bool
    cx_count: int
    per_stage_cx: list[int]
    tracked_count: int
    strict_checked: bool
    failure: str | None
    first_unmatched: str | None


class StageVerifyRequest(BaseModel):
    distance: int = Field(ge=2, description="Distance being grown to distance + 2")
    strict: bool = False
    max_pattern_distance: int = Field(DEFAULT_MAX_PATTERN_DISTANCE, ge=2)


class StageVerifyResponse(BaseModel):
    start_distance: int
    end_distance: int
    ok: bool
    group_match: bool
    sign_match: bool
    logical_frame: str | None
    depth: int
    local: bool
    cx_count: int
    failure: str | None
    first_unmatched: str | None


class StatsRequest(BaseModel):
    distances: list[int] = Field(min_length=1)
    max_pattern_distance: int = Field(DEFAULT_MAX_PATTERN_DISTANCE, ge=2)


class StageCountModel(BaseModel):
    distance: int
    measured_cx: int
    claimed_cx: int
    claim_matches: bool
    baseline_cx: int | None
    beats_baseline: bool | None


class StatsRow(BaseModel):
    distance: int
    qubits: int
    depth: int
    expected_depth: int
    depth_match: bool
    cx_count: int
    reset_count: int
    s_dag_count: int
    local: bool
    input_qubit: int
    stage: StageCountModel


class StatsResponse(BaseModel):
    rows: list[StatsRow]


class OracleRequest(BaseModel):
    distance: int | None = Field(None, ge=2, description="Growth start distance")
    census_distance: int | None = Field(None, ge=2, description="Run a census at this distance")
    census_cap: int = Field(12, ge=2)
    include_elements: bool = False


class ImpossibilityModel(BaseModel):
    start_distance: int
    end_distance: int
    ring_qubits: int
    available_rank: int
    census_backed: bool
    impossible: bool
    text: str


class CensusModel(BaseModel):
    distance: int
    qubits: int
    weight1_count: int
    weight2_count: int
    independent_rank: int
    weight2_elements: list[str] | None


class OracleResponse(BaseModel):
    impossibility: ImpossibilityModel | None
    census: CensusModel | None


class HealthResponse(BaseModel):
    status: str
    version: str
