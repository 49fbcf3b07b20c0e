"""HTTP service exposing generation, verification, stats, and oracles.

Errors are reported as HTTP 400 with a structured detail carrying a
kind tag ("parse", "config", or "verification") so that clients can map
them to distinct exit codes. An honest verification miss is not an
error: it comes back as a 200 response with ok set to False.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from . import __version__
from .circuit import Circuit, parse_text
from .code import build_code
from .errors import ConfigError, ParseError, SurfgrowError, ValidationError
from .flow import verify_encoding, verify_growth_step
from .oracle import depth1_growth_impossible, low_weight_census
from .schemas import (
    CensusModel,
    GenerateRequest,
    GenerateResponse,
    HealthResponse,
    ImpossibilityModel,
    LogicalFrameModel,
    OracleRequest,
    OracleResponse,
    StageCountModel,
    StageVerifyRequest,
    StageVerifyResponse,
    StatsRequest,
    StatsResponse,
    StatsRow,
    VerifyRequest,
    VerifyResponse,
)
from .synth import encoder_stats, full_encoder, growth_stage, input_qubit, strip_markers

app = FastAPI(title="surfgrow", version=__version__)


def _fail(kind: str, message: str) -> HTTPException:
    return HTTPException(status_code=400, detail={"kind": kind, "message": message})


def _guard_distance(distance: int, cap: int) -> None:
    if distance > cap:
        raise _fail("config", f"distance {distance} exceeds the configured bound {cap}")


def _render(circuit: Circuit, fmt: str) -> str:
    if fmt == "text":
        return circuit.to_text()
    if fmt == "url":
        return circuit.to_url()
    return circuit.to_records_json()


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


@app.post("/generate", response_model=GenerateResponse)
def generate(req: GenerateRequest) -> GenerateResponse:
    _guard_distance(req.distance, req.max_pattern_distance)
    try:
        if req.kind == "stage":
            circuit = growth_stage(req.distance)
            input_q = None
        else:
            circuit = full_encoder(req.distance)
            input_q = input_qubit(circuit)
    except ConfigError as exc:
        raise _fail("config", str(exc)) from exc
    except SurfgrowError as exc:
        raise _fail("verification", str(exc)) from exc
    if not req.include_markers:
        circuit = strip_markers(circuit)
    return GenerateResponse(
        distance=req.distance,
        kind=req.kind,
        format=req.format,
        content=_render(circuit, req.format),
        qubits=circuit.n,
        depth=circuit.depth,
        cx_count=circuit.two_qubit_count,
        local=circuit.is_local,
        input_qubit=input_q,
    )


@app.post("/verify", response_model=VerifyResponse)
def verify(req: VerifyRequest) -> VerifyResponse:
    if req.circuit_text is None and req.distance is None:
        raise _fail("config", "provide a distance, a circuit text, or both")
    try:
        if req.circuit_text is not None:
            circuit = parse_text(req.circuit_text)
            distance = req.distance if req.distance is not None else circuit.grid_size
        else:
            distance = req.distance
            _guard_distance(distance, req.max_pattern_distance)
            circuit = full_encoder(distance)
        code = build_code(distance)
        certificate = verify_encoding(circuit, code, strict=req.strict)
    except ParseError as exc:
        raise _fail("parse", str(exc)) from exc
    except ConfigError as exc:
        raise _fail("config", str(exc)) from exc
    except (ValidationError, SurfgrowError) as exc:
        raise _fail("verification", str(exc)) from exc
    payload = certificate.to_dict()
    frame = payload.pop("logical_frame")
    payload.pop("depth_match")
    payload.pop("ok")
    return VerifyResponse(
        ok=certificate.ok,
        depth_match=certificate.depth_match,
        logical_frame=LogicalFrameModel(**frame) if frame else None,
        **payload,
    )


@app.post("/verify-stage", response_model=StageVerifyResponse)
def verify_stage(req: StageVerifyRequest) -> StageVerifyResponse:
    _guard_distance(req.distance, req.max_pattern_distance)
    try:
        certificate = verify_growth_step(req.distance, strict=req.strict)
    except ConfigError as exc:
        raise _fail("config", str(exc)) from exc
    except SurfgrowError as exc:
        raise _fail("verification", str(exc)) from exc
    payload = certificate.to_dict()
    payload.pop("ok")
    return StageVerifyResponse(ok=certificate.ok, **payload)


@app.post("/stats", response_model=StatsResponse)
def stats(req: StatsRequest) -> StatsResponse:
    rows = []
    for distance in req.distances:
        if distance < 2:
            raise _fail("config", f"distance {distance} is below 2")
        _guard_distance(distance, req.max_pattern_distance)
        s = encoder_stats(distance)
        r = s.stage_report
        rows.append(StatsRow(
            distance=s.distance,
            qubits=s.qubits,
            depth=s.depth,
            expected_depth=s.expected_depth,
            depth_match=s.depth_matches,
            cx_count=s.cx_count,
            reset_count=s.reset_count,
            s_dag_count=s.s_dag_count,
            local=s.local,
            input_qubit=s.input_qubit,
            stage=StageCountModel(
                distance=r.distance,
                measured_cx=r.measured_cx,
                claimed_cx=r.claimed_cx,
                claim_matches=r.claim_matches,
                baseline_cx=r.baseline_cx,
                beats_baseline=r.beats_baseline,
            ),
        ))
    return StatsResponse(rows=rows)


@app.post("/oracle", response_model=OracleResponse)
def oracle_endpoint(req: OracleRequest) -> OracleResponse:
    if req.distance is None and req.census_distance is None:
        raise _fail("config", "provide a growth distance, a census distance, or both")
    impossibility = None
    census = None
    try:
        if req.distance is not None:
            record = depth1_growth_impossible(req.distance, census_cap=req.census_cap)
            impossibility = ImpossibilityModel(text=record.to_text(), **record.to_dict())
        if req.census_distance is not None:
            if req.census_distance > req.census_cap:
                raise _fail(
                    "config",
                    f"census at distance {req.census_distance} exceeds cap {req.census_cap}")
            result = low_weight_census(build_code(req.census_distance))
            census = CensusModel(
                distance=result.distance,
                qubits=result.qubits,
                weight1_count=result.weight1_count,
                weight2_count=result.weight2_count,
                independent_rank=result.independent_rank,
                weight2_elements=(
                    [op.to_string() for op in result.weight2_elements]
                    if req.include_elements else None),
            )
    except ConfigError as exc:
        raise _fail("config", str(exc)) from exc
    return OracleResponse(impossibility=impossibility, census=census)
