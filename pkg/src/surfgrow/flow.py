"""Stabilizer flow verification and encoding certificates.

The verifier simulates a circuit symbolically. It maintains a list of
tracked stabilizer flows plus the images of the input qubit's X and Z.
A Z (X) basis reset appends a fresh +Z (+X) flow on its qubit and is
rejected when any tracked operator already touches that qubit, since a
reset there would not act unitarily on tracked information. Unitary
gates conjugate every tracked operator exactly, signs included.

A circuit encodes a target code when the final tracked group equals
the full stabilizer group of the code, generator signs agree, and the
images of the input X and Z land in logical cosets. The coset pair
determines the induced single-qubit logical frame, one of the 24
signed axis permutations.
"""

from __future__ import annotations

from dataclasses import dataclass

from .circuit import Circuit
from .code import RotatedSurfaceCode, build_code, embed, Coord
from .errors import NonUnitarityError, ValidationError, VerificationError
from .gates import CX, RESET_X, RESET_Z, S_DAG
from .pauli import PauliOperator, StabilizerSet
from .synth import expected_depth, full_encoder, growth_stage

_AXES = ("X", "Y", "Z")
_PHASE_EXPONENT = {1 + 0j: 0, 1j: 1, -1 + 0j: 2, -1j: 3}


def _phase_ratio(a: complex, b: complex) -> complex:
    """Exact quotient of two unit phases from {1, i, -1, -i}."""
    values = (1 + 0j, 1j, -1 + 0j, -1j)
    return values[(_PHASE_EXPONENT[a] - _PHASE_EXPONENT[b]) % 4]


def _single_axis(letter: str, sign: int) -> PauliOperator:
    return PauliOperator.from_support(1, letter, [0], sign)


def _axis_of(p: PauliOperator) -> tuple[str, int]:
    """Letter and sign of a single-qubit Hermitian Pauli."""
    letter = p.letter_at(0)
    if letter == "_" or p.phase not in (1, -1):
        raise ValidationError(f"not a signed single-qubit axis: {p.to_string()!r}")
    return letter, int(p.phase.real)


@dataclass(frozen=True)
class SingleQubitFrame:
    """A single-qubit Clifford as its action on the X and Z axes.

    Attributes:
        x_axis, x_sign: X maps to x_sign times the x_axis letter.
        z_axis, z_sign: Z maps to z_sign times the z_axis letter.
    """

    x_axis: str
    x_sign: int
    z_axis: str
    z_sign: int

    def __post_init__(self):
        if self.x_axis not in _AXES or self.z_axis not in _AXES:
            raise ValidationError("frame axes must be X, Y, or Z")
        if self.x_axis == self.z_axis:
            raise ValidationError("frame must map X and Z to distinct axes")
        if self.x_sign not in (1, -1) or self.z_sign not in (1, -1):
            raise ValidationError("frame signs must be +1 or -1")

    @classmethod
    def identity(cls) -> SingleQubitFrame:
        return cls("X", 1, "Z", 1)

    def image_of(self, axis: str) -> tuple[str, int]:
        """Image letter and sign of one axis; Y follows from i*X*Z."""
        if axis == "X":
            return self.x_axis, self.x_sign
        if axis == "Z":
            return self.z_axis, self.z_sign
        if axis != "Y":
            raise ValidationError(f"unknown axis {axis!r}")
        px = _single_axis(self.x_axis, self.x_sign)
        pz = _single_axis(self.z_axis, self.z_sign)
        prod = px * pz
        return _axis_of(PauliOperator(1, prod.x_bits, prod.z_bits, prod.phase_exponent + 1))

    def then(self, other: SingleQubitFrame) -> SingleQubitFrame:
        """The frame of applying self first, then other."""
        ax, sx = self.image_of("X")
        bx, tx = other.image_of(ax)
        az, sz = self.image_of("Z")
        bz, tz = other.image_of(az)
        return SingleQubitFrame(bx, sx * tx, bz, sz * tz)

    def inverse(self) -> SingleQubitFrame:
        images = {}
        for axis in _AXES:
            letter, sign = self.image_of(axis)
            images[letter] = (axis, sign)
        return SingleQubitFrame(*images["X"], *images["Z"])

    def describe(self) -> str:
        sx = "+" if self.x_sign > 0 else "-"
        sz = "+" if self.z_sign > 0 else "-"
        return f"X->{sx}{self.x_axis}, Z->{sz}{self.z_axis}"

    @property
    def is_identity(self) -> bool:
        return self == SingleQubitFrame.identity()


class FlowState:
    """Mutable symbolic state: tracked flows plus logical images."""

    def __init__(self, n: int, tracked: list[PauliOperator],
                 logical_x: PauliOperator, logical_z: PauliOperator):
        self.n = n
        self.tracked = list(tracked)
        self.logical_x = logical_x
        self.logical_z = logical_z

    @classmethod
    def fresh(cls, n: int, input_qubit: int) -> FlowState:
        """State before an encoder: nothing tracked, logicals on the input."""
        return cls(
            n,
            [],
            PauliOperator.from_support(n, "X", [input_qubit]),
            PauliOperator.from_support(n, "Z", [input_qubit]),
        )

    def _support_mask(self) -> int:
        mask = self.logical_x.support | self.logical_z.support
        for op in self.tracked:
            mask |= op.support
        return mask

    def apply_gate(self, gate, layer_index: int) -> None:
        if gate.name in (RESET_Z, RESET_X):
            (q,) = gate.qubits
            if self._support_mask() >> q & 1:
                raise NonUnitarityError(
                    f"layer {layer_index}: reset on qubit {q} which already "
                    f"supports tracked information")
            letter = "Z" if gate.name == RESET_Z else "X"
            self.tracked.append(PauliOperator.from_support(self.n, letter, [q]))
        elif gate.name in (CX, S_DAG):
            self.tracked = [op.conjugated_by(gate) for op in self.tracked]
            self.logical_x = self.logical_x.conjugated_by(gate)
            self.logical_z = self.logical_z.conjugated_by(gate)
        else:
            raise ValidationError(f"cannot flow through gate {gate.name}")

    def apply_layer(self, layer, layer_index: int) -> None:
        for gate in layer.gates:
            self.apply_gate(gate, layer_index)

    def tracked_set(self) -> StabilizerSet:
        return StabilizerSet(self.n, tuple(self.tracked))


def _resolve_coset(image: PauliOperator, code: RotatedSurfaceCode,
                   group: StabilizerSet) -> tuple[str, int] | None:
    """Finds which signed logical coset an image operator lies in.

    Returns (axis, sign) such that image = sign * axis-logical * S for
    some stabilizer S of the target group, or None when the image is
    outside every logical coset.
    """
    candidates = (
        ("X", code.logical_x_operator()),
        ("Y", code.logical_y_operator()),
        ("Z", code.logical_z_operator()),
    )
    for axis, rep in candidates:
        prod = image * rep
        m = group.member_with_sign(prod)
        if m is None:
            continue
        sign = _phase_ratio(prod.phase, m.phase)
        if sign not in (1 + 0j, -1 + 0j):
            raise VerificationError(
                f"non-real coset sign {sign} for axis {axis}; image {image.to_string()!r}")
        return axis, int(sign.real)
    return None


@dataclass(frozen=True)
class EncodingCertificate:
    """Machine-checked properties of one encoding circuit.

    All fields are measured on the given circuit against the given
    target code; ok summarizes full success. When failure is set the
    flow aborted early (a reset hit a supported qubit) and the match
    fields are reported as False.
    """

    distance: int
    qubits: int
    input_qubit: int | None
    group_match: bool
    sign_match: bool
    logical_frame: SingleQubitFrame | None
    depth: int
    expected_depth: int
    local: bool
    cx_count: int
    per_stage_cx: tuple[int, ...]
    tracked_count: int
    strict_checked: bool
    failure: str | None = None
    first_unmatched: str | None = None

    @property
    def depth_match(self) -> bool:
        return self.depth == self.expected_depth

    @property
    def ok(self) -> bool:
        return (self.failure is None and self.group_match and self.sign_match
                and self.logical_frame is not None and self.depth_match and self.local)

    def to_dict(self) -> dict:
        frame = None
        if self.logical_frame is not None:
            frame = {
                "x_axis": self.logical_frame.x_axis,
                "x_sign": self.logical_frame.x_sign,
                "z_axis": self.logical_frame.z_axis,
                "z_sign": self.logical_frame.z_sign,
                "text": self.logical_frame.describe(),
            }
        return {
            "distance": self.distance,
            "qubits": self.qubits,
            "input_qubit": self.input_qubit,
            "ok": self.ok,
            "group_match": self.group_match,
            "sign_match": self.sign_match,
            "logical_frame": frame,
            "depth": self.depth,
            "expected_depth": self.expected_depth,
            "depth_match": self.depth_match,
            "local": self.local,
            "cx_count": self.cx_count,
            "per_stage_cx": list(self.per_stage_cx),
            "tracked_count": self.tracked_count,
            "strict_checked": self.strict_checked,
            "failure": self.failure,
            "first_unmatched": self.first_unmatched,
        }

    def to_text(self) -> str:
        lines = [
            f"distance {self.distance}: {'PASS' if self.ok else 'FAIL'}",
            f"  group match: {self.group_match}  sign match: {self.sign_match}",
            f"  logical frame: {self.logical_frame.describe() if self.logical_frame else 'unresolved'}",
            f"  depth: {self.depth} (expected {self.expected_depth})  local: {self.local}",
            f"  cx: {self.cx_count}  per stage: {list(self.per_stage_cx)}",
        ]
        if self.failure:
            lines.append(f"  failure: {self.failure}")
        if self.first_unmatched:
            lines.append(f"  first unmatched generator: {self.first_unmatched}")
        return "\n".join(lines)


def _per_stage_cx(circuit: Circuit) -> tuple[int, ...]:
    """CX counts segmented at each reset-bearing layer."""
    counts: list[int] = []
    for layer in circuit.layers:
        if any(g.is_reset for g in layer.gates) or not counts:
            counts.append(0)
        counts[-1] += sum(1 for g in layer.gates if g.name == CX)
    return tuple(counts)


def _compare_final(state: FlowState, code: RotatedSurfaceCode):
    """Group and sign comparison plus the first unmatched generator."""
    target = code.stabilizer_set()
    tracked = state.tracked_set()
    group_match, sign_match = tracked.same_group_as(target)
    first_unmatched = None
    if not (group_match and sign_match):
        for g in target.generators:
            m = tracked.member_with_sign(g)
            if m is None or m.phase != g.phase:
                found = "missing" if m is None else f"sign {m.phase.real:+.0f}"
                first_unmatched = f"{g.to_string()} ({found})"
                break
    return tracked, target, group_match, sign_match, first_unmatched


def verify_encoding(circuit: Circuit, code: RotatedSurfaceCode,
                    strict: bool = False) -> EncodingCertificate:
    """Certifies that a circuit encodes one qubit into the target code.

    Args:
        circuit: Candidate encoder on the code's hosting grid.
        strict: Also validate the tracked set invariants after every
            layer instead of only at the end.

    Returns a certificate; it never raises for honest verification
    failures, only for structural impossibilities such as a circuit on
    the wrong number of qubits.
    """
    if circuit.n != code.n:
        raise ValidationError(
            f"circuit has {circuit.n} qubits but the target code needs {code.n}")
    free = circuit.never_reset_qubits()
    depth = circuit.depth
    local = circuit.is_local
    cx_count = circuit.two_qubit_count
    per_stage = _per_stage_cx(circuit)

    def failed(message: str, input_q: int | None, tracked: int) -> EncodingCertificate:
        return EncodingCertificate(
            distance=code.distance, qubits=circuit.n, input_qubit=input_q,
            group_match=False, sign_match=False, logical_frame=None,
            depth=depth, expected_depth=expected_depth(code.distance),
            local=local, cx_count=cx_count, per_stage_cx=per_stage,
            tracked_count=tracked, strict_checked=strict, failure=message)

    if len(free) != 1:
        return failed(f"expected exactly one never-reset input qubit, found {sorted(free)}",
                      None, 0)
    input_q = next(iter(free))
    state = FlowState.fresh(circuit.n, input_q)
    try:
        for li, layer in enumerate(circuit.layers):
            state.apply_layer(layer, li)
            if strict:
                state.tracked_set()
    except NonUnitarityError as exc:
        return failed(str(exc), input_q, len(state.tracked))

    tracked, target, group_match, sign_match, first_unmatched = _compare_final(state, code)
    frame = None
    if group_match:
        x_coset = _resolve_coset(state.logical_x, code, target)
        z_coset = _resolve_coset(state.logical_z, code, target)
        if x_coset is not None and z_coset is not None:
            frame = SingleQubitFrame(x_coset[0], x_coset[1], z_coset[0], z_coset[1])
    return EncodingCertificate(
        distance=code.distance,
        qubits=circuit.n,
        input_qubit=input_q,
        group_match=group_match,
        sign_match=sign_match,
        logical_frame=frame,
        depth=depth,
        expected_depth=expected_depth(code.distance),
        local=local,
        cx_count=cx_count,
        per_stage_cx=per_stage,
        tracked_count=len(tracked.generators),
        strict_checked=strict,
        first_unmatched=first_unmatched,
    )


def verify_generated(distance: int, strict: bool = False) -> EncodingCertificate:
    """Builds the encoder for a distance and certifies it."""
    return verify_encoding(full_encoder(distance), build_code(distance), strict=strict)


@dataclass(frozen=True)
class StageCertificate:
    """Certificate for one d to d+2 growth stage in isolation.

    The stage starts from the distance-d code embedded at offset (1,1)
    of the d+2 frame and must produce the full distance d+2 code; the
    frame reports how the stage transports the logical axes.
    """

    start_distance: int
    end_distance: int
    group_match: bool
    sign_match: bool
    logical_frame: SingleQubitFrame | None
    depth: int
    local: bool
    cx_count: int
    failure: str | None = None
    first_unmatched: str | None = None

    @property
    def ok(self) -> bool:
        return (self.failure is None and self.group_match and self.sign_match
                and self.logical_frame is not None and self.depth == 2 and self.local)

    def to_dict(self) -> dict:
        return {
            "start_distance": self.start_distance,
            "end_distance": self.end_distance,
            "ok": self.ok,
            "group_match": self.group_match,
            "sign_match": self.sign_match,
            "logical_frame": self.logical_frame.describe() if self.logical_frame else None,
            "depth": self.depth,
            "local": self.local,
            "cx_count": self.cx_count,
            "failure": self.failure,
            "first_unmatched": self.first_unmatched,
        }


def verify_growth_step(distance: int, strict: bool = False) -> StageCertificate:
    """Certifies the generated stage growing distance to distance + 2."""
    stage = growth_stage(distance)
    big = build_code(distance + 2)
    small = embed(build_code(distance), distance + 2, Coord(1, 1))
    state = FlowState(
        stage.n,
        small.stabilizer_operators(),
        small.logical_x_operator(),
        small.logical_z_operator(),
    )
    try:
        for li, layer in enumerate(stage.layers):
            state.apply_layer(layer, li)
            if strict:
                state.tracked_set()
    except NonUnitarityError as exc:
        return StageCertificate(distance, distance + 2, False, False, None,
                                stage.depth, stage.is_local, stage.two_qubit_count,
                                failure=str(exc))
    tracked, target, group_match, sign_match, first_unmatched = _compare_final(state, big)
    frame = None
    if group_match:
        x_coset = _resolve_coset(state.logical_x, big, target)
        z_coset = _resolve_coset(state.logical_z, big, target)
        if x_coset is not None and z_coset is not None:
            frame = SingleQubitFrame(x_coset[0], x_coset[1], z_coset[0], z_coset[1])
    return StageCertificate(
        start_distance=distance,
        end_distance=distance + 2,
        group_match=group_match,
        sign_match=sign_match,
        logical_frame=frame,
        depth=stage.depth,
        local=stage.is_local,
        cx_count=stage.two_qubit_count,
        first_unmatched=first_unmatched,
    )
