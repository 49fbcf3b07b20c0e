"""Encoder synthesis: canonical payloads, pattern extraction, growth.

Four canonical circuits are shipped as text constants: depth-4 and
depth-2 base encoders for distances 3 and 2, and one two-stage growth
chain per parity (3 to 5 to 7 on a 7x7 frame, 2 to 4 to 6 on a 6x6
frame). Each chain contributes two instances of the single inductive
step, a depth-2 stage that grows a centered distance-d patch to
distance d+2 by resetting the surrounding ring and coupling it inward.

A stage is summarized by one tile per ring position: the reset basis
plus the relative CX role played in each of the two CX layers. Reading
the tiles side by side for the small and large instance of the same
parity exposes a two-tile unit that the larger instance inserts into
the smaller one's tile sequence. Re-instantiating with the unit
repeated k times yields the stage for any distance of that parity, and
the flow verifier certifies every instantiation independently.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .circuit import Circuit, Layer, parse_text
from .errors import ConfigError, SynthesisError, ValidationError
from .gates import CX, RESET_X, RESET_Z, S_DAG, Gate

# Canonical circuit payloads in the text dialect. These are data, not
# style: argument order inside statements is preserved exactly.

BASE_ODD_TEXT = "Q(0,0)0;Q(0,1)1;Q(0,2)2;Q(1,0)3;Q(1,1)4;Q(1,2)5;Q(2,0)6;Q(2,1)7;Q(2,2)8;R_6_0_2_8;RX_3_1_5_7;S_DAG_4;MARKX(0)3_7;MARKX(1)3;MARKX(2)1_5;MARKX(3)5;MARKZ(4)6_0;MARKZ(5)0;MARKZ(6)2;MARKZ(7)8;TICK;CX_7_4_3_6_5_2;TICK;CX_4_3_7_8_1_0;TICK;CX_1_4_0_3_7_6;TICK;CX_4_5_1_2"

BASE_EVEN_TEXT = "Q(0,0)0;Q(0,1)1;Q(1,0)2;Q(1,1)3;R_1_3;RX_2;MARKX(2)2;MARKZ(1)1_3;MARKZ(3)3;TICK;CX_2_3_0_1;TICK;CX_2_0_3_1"

CHAIN_ODD_TEXT = "Q(0,0)0;Q(0,1)1;Q(0,2)2;Q(0,3)3;Q(0,4)4;Q(0,5)5;Q(0,6)6;Q(1,0)7;Q(1,1)8;Q(1,2)9;Q(1,3)10;Q(1,4)11;Q(1,5)12;Q(1,6)13;Q(2,0)14;Q(2,1)15;Q(2,2)16;Q(2,3)17;Q(2,4)18;Q(2,5)19;Q(2,6)20;Q(3,0)21;Q(3,1)22;Q(3,2)23;Q(3,3)24;Q(3,4)25;Q(3,5)26;Q(3,6)27;Q(4,0)28;Q(4,1)29;Q(4,2)30;Q(4,3)31;Q(4,4)32;Q(4,5)33;Q(4,6)34;Q(5,0)35;Q(5,1)36;Q(5,2)37;Q(5,3)38;Q(5,4)39;Q(5,5)40;Q(5,6)41;Q(6,0)42;Q(6,1)43;Q(6,2)44;Q(6,3)45;Q(6,4)46;Q(6,5)47;Q(6,6)48;MARKX(0)16_23_24_17;MARKX(1)24_25_32_31;MARKX(2)25_18;MARKX(3)23_30;MARKZ(4)16_17;MARKZ(5)17_24_25_18;MARKZ(6)24_31_30_23;MARKZ(7)31_32;TICK;R_37_40_26_8_22_11_19_29;RX_9_10_38_39_33_15_12_36;MARKX(0)15;MARKX(1)33;MARKX(12)9;MARKX(13)10;MARKX(14)12;MARKX(15)36;MARKX(16)38;MARKX(17)39;MARKX(8)15;MARKX(9)33;MARKZ(10)11;MARKZ(11)37;MARKZ(18)8;MARKZ(19)19;MARKZ(20)22;MARKZ(21)26;MARKZ(22)29;MARKZ(23)40;MARKZ(5)11;MARKZ(6)37;TICK;CX_39_32_38_37_33_26_9_16_10_11_15_22_18_19_30_29;TICK;CX_25_26_32_33_39_40_38_31_37_30_10_17_11_18_9_8_16_15_23_22_12_19_36_29;TICK;TICK;R_0_14_28_35_43_45_48_34_20_13_5_3;RX_7_1_2_4_6_27_41_47_46_44_42_21;MARKX(12)7;MARKX(17)41;MARKX(2)27;MARKX(24)7;MARKX(25)21;MARKX(26)42;MARKX(27)44;MARKX(3)21;MARKX(35)27;MARKX(41)6;MARKX(42)41;MARKX(43)47;MARKX(44)46;MARKX(46)1;MARKX(47)2;MARKX(48)4;MARKZ(19)5;MARKZ(22)43;MARKZ(28)0;MARKZ(29)14;MARKZ(30)28;MARKZ(31)35;MARKZ(32)43;MARKZ(33)45;MARKZ(34)34;MARKZ(36)20;MARKZ(37)13;MARKZ(39)5;MARKZ(4)3;MARKZ(40)48;MARKZ(45)3;MARKZ(7)45;TICK;CX_1_8_7_14_21_28_36_35_44_43_46_45_47_40_41_34_27_20_12_13_4_5_2_3;TICK;CX_1_0_8_7_15_14_22_21_29_28_47_48_40_41_33_34_26_27_19_20_42_35_43_36_44_37_45_38_46_39_2_9_3_10_4_11_5_12_6_13"

CHAIN_EVEN_TEXT = "Q(0,0)0;Q(0,1)1;Q(0,2)2;Q(0,3)3;Q(0,4)4;Q(0,5)5;Q(1,0)6;Q(1,1)7;Q(1,2)8;Q(1,3)9;Q(1,4)10;Q(1,5)11;Q(2,0)12;Q(2,1)13;Q(2,2)14;Q(2,3)15;Q(2,4)16;Q(2,5)17;Q(3,0)18;Q(3,1)19;Q(3,2)20;Q(3,3)21;Q(3,4)22;Q(3,5)23;Q(4,0)24;Q(4,1)25;Q(4,2)26;Q(4,3)27;Q(4,4)28;Q(4,5)29;Q(5,0)30;Q(5,1)31;Q(5,2)32;Q(5,3)33;Q(5,4)34;Q(5,5)35;MARKX(4)14_20_21_15;MARKZ(3)15_14;MARKZ(5)21_20;TICK;R_7_13_25_10_16_28;RX_19_26_27_22_8_9;MARKX(0)8;MARKX(2)26;MARKX(33)19;MARKX(34)22;MARKX(4)19_22;MARKX(6)9;MARKX(8)27;MARKZ(1)13;MARKZ(29)7;MARKZ(30)10;MARKZ(31)25;MARKZ(32)28;MARKZ(7)16;TICK;CX_8_14_19_13_26_20_9_15_27_21_22_16;TICK;CX_8_7_14_13_20_19_26_25_9_10_15_16_21_22_27_28;TICK;TICK;R_3_33_0_5_35_30_6_11_23_18;RX_2_32_1_4_31_34_12_24_29_17;MARKX(0)12;MARKX(19)2;MARKX(2)24;MARKX(20)32;MARKX(21)1;MARKX(22)4;MARKX(23)31;MARKX(24)34;MARKX(25)12;MARKX(26)24;MARKX(27)29;MARKX(28)17;MARKX(6)17;MARKX(8)29;MARKZ(10)33;MARKZ(11)0;MARKZ(12)5;MARKZ(13)35;MARKZ(14)30;MARKZ(15)6;MARKZ(16)11;MARKZ(17)23;MARKZ(18)18;MARKZ(3)3;MARKZ(5)33;MARKZ(9)3;TICK;CX_1_7_34_28_31_25_4_10_2_3_32_33_12_6_24_18_29_23_17_11;TICK;CX_32_26_33_27_3_9_2_8_7_6_1_0_13_12_19_18_25_24_31_30_4_5_10_11_16_17_22_23_28_29_34_35"

SIDE_NAMES = ("top", "bottom", "left", "right")

PATTERN_BASE_DISTANCE = {"odd": 3, "even": 2}


def parity_of(distance: int) -> str:
    return "odd" if distance % 2 else "even"


# ----------------------------------------------------------------------
# Base encoders
# ----------------------------------------------------------------------


@lru_cache(maxsize=None)
def base_encoder(distance: int) -> Circuit:
    """The canonical base encoder for distance 2 or 3, canonicalized."""
    if distance == 3:
        return parse_text(BASE_ODD_TEXT).canonicalized()
    if distance == 2:
        return parse_text(BASE_EVEN_TEXT).canonicalized()
    raise ConfigError(f"no base encoder for distance {distance}; bases exist for 2 and 3")


@lru_cache(maxsize=None)
def growth_chain(parity: str) -> Circuit:
    """The canonical two-stage growth chain for one parity."""
    if parity == "odd":
        return parse_text(CHAIN_ODD_TEXT)
    if parity == "even":
        return parse_text(CHAIN_EVEN_TEXT)
    raise ConfigError(f"parity must be 'odd' or 'even', got {parity!r}")


def _reset_layer_indices(chain: Circuit) -> list[int]:
    return [i for i, layer in enumerate(chain.layers)
            if any(g.is_reset for g in layer.gates)]


@lru_cache(maxsize=None)
def canonical_stage(parity: str, which: int) -> Circuit:
    """One stage of a canonical chain, cut to its own local frame.

    Args:
        parity: "odd" or "even".
        which: 0 for the first (smaller) stage, 1 for the second.

    The local frame of a stage growing d to d+2 is the (d+2) by (d+2)
    window centered on the chain grid; layer 0 holds the ring resets,
    layers 1 and 2 the CX rounds.
    """
    if which not in (0, 1):
        raise ConfigError("canonical chains contain stages 0 and 1")
    chain = growth_chain(parity)
    grid = chain.grid_size
    starts = _reset_layer_indices(chain)
    if len(starts) != 2:
        raise SynthesisError(f"expected 2 reset layers in the {parity} chain, found {len(starts)}")
    start = starts[which]
    small = PATTERN_BASE_DISTANCE[parity] + 2 * which
    frame = small + 2
    offset = (grid - frame) // 2
    if offset * 2 + frame != grid:
        raise SynthesisError(f"stage frame {frame} does not center in grid {grid}")
    return chain.extract_window(offset, offset, frame, start, start + 3)


# ----------------------------------------------------------------------
# Ring tiles
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class CxRole:
    """How a ring qubit participates in one CX layer.

    Attributes:
        dr: Row offset from the ring qubit to its partner.
        dc: Column offset to the partner.
        control: True when the ring qubit is the control.
    """

    dr: int
    dc: int
    control: bool


@dataclass(frozen=True)
class RingTile:
    """Reset basis and per-layer CX roles of one ring position."""

    reset: str
    first: CxRole | None
    second: CxRole | None


def _ring_positions(frame: int) -> dict[str, list[tuple[int, int]]]:
    """Ring coordinates grouped by side, in a fixed traversal order.

    Top and bottom include the corners and run left to right; left and
    right exclude the corners and run top to bottom.
    """
    last = frame - 1
    return {
        "top": [(0, c) for c in range(frame)],
        "bottom": [(last, c) for c in range(frame)],
        "left": [(r, 0) for r in range(1, last)],
        "right": [(r, last) for r in range(1, last)],
    }


def stage_tiles(stage: Circuit) -> dict[str, tuple[RingTile, ...]]:
    """Summarizes a stage circuit as per-side ring tile sequences.

    Raises SynthesisError when the circuit does not have the stage
    shape: exactly three layers, ring-covering resets in layer 0, CX
    rounds in layers 1 and 2 with every gate touching the ring.
    """
    frame = stage.grid_size
    if len(stage.layers) != 3:
        raise SynthesisError(f"a stage has 3 layers, got {len(stage.layers)}")
    sides = _ring_positions(frame)
    ring = {pos for positions in sides.values() for pos in positions}

    resets: dict[tuple[int, int], str] = {}
    for g in stage.layers[0].gates:
        if not g.is_reset:
            raise SynthesisError(f"stage layer 0 must contain only resets, found {g.name}")
        pos = (g.qubits[0] // frame, g.qubits[0] % frame)
        if pos not in ring:
            raise SynthesisError(f"reset off the ring at {pos}")
        resets[pos] = g.name
    if set(resets) != ring:
        raise SynthesisError("stage resets must cover the ring exactly")

    roles: dict[tuple[int, int], dict[int, CxRole]] = {pos: {} for pos in ring}
    for layer_index in (1, 2):
        for g in stage.layers[layer_index].gates:
            if g.name != CX:
                raise SynthesisError(f"stage layer {layer_index} must contain only CX, found {g.name}")
            (cq, tq) = g.qubits
            cpos = (cq // frame, cq % frame)
            tpos = (tq // frame, tq % frame)
            touched = False
            for pos, other, control in ((cpos, tpos, True), (tpos, cpos, False)):
                if pos in ring:
                    touched = True
                    if layer_index in roles[pos]:
                        raise SynthesisError(f"ring position {pos} used twice in layer {layer_index}")
                    roles[pos][layer_index] = CxRole(other[0] - pos[0], other[1] - pos[1], control)
            if not touched:
                raise SynthesisError(f"stage CX {g.qubits} does not touch the ring")

    return {
        side: tuple(
            RingTile(resets[pos], roles[pos].get(1), roles[pos].get(2))
            for pos in positions
        )
        for side, positions in sides.items()
    }


# ----------------------------------------------------------------------
# Pattern extraction and instantiation
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class SidePattern:
    """Tile sequence of one side as prefix + repeated unit + suffix."""

    prefix: tuple[RingTile, ...]
    unit: tuple[RingTile, ...]
    suffix: tuple[RingTile, ...]

    def sequence(self, repeats: int) -> tuple[RingTile, ...]:
        return self.prefix + self.unit * repeats + self.suffix


def _extract_side_pattern(side: str, small: tuple[RingTile, ...],
                          big: tuple[RingTile, ...]) -> SidePattern:
    """Finds the two-tile unit whose insertion turns small into big.

    Takes the smallest insertion position; raises SynthesisError with
    the first mismatching position when no insertion point works.
    """
    if len(big) != len(small) + 2:
        raise SynthesisError("side sequences must differ by one two-tile unit",
                             side=side, position=None)
    for s in range(len(small) + 1):
        if big[:s] == small[:s] and big[s + 2:] == small[s:]:
            return SidePattern(small[:s], big[s:s + 2], small[s:])
    mismatch = next((i for i, (a, b) in enumerate(zip(small, big)) if a != b), len(small))
    raise SynthesisError("side sequences are not one unit insertion apart",
                         side=side, position=mismatch)


@dataclass(frozen=True)
class GrowthPattern:
    """Everything needed to instantiate a growth stage for one parity."""

    parity: str
    base_distance: int
    sides: dict[str, SidePattern]

    def repeats_for(self, distance: int) -> int:
        if distance < 2:
            raise ConfigError("distance must be at least 2")
        if parity_of(distance) != self.parity:
            raise ConfigError(f"pattern is for {self.parity} distances, got {distance}")
        return (distance - self.base_distance) // 2

    def instantiate(self, distance: int) -> Circuit:
        """Builds the depth-2 stage growing distance to distance + 2.

        The result lives on its own (distance + 2) square local frame
        with the input patch at offset (1, 1) and carries no markers.
        """
        k = self.repeats_for(distance)
        frame = distance + 2
        positions = _ring_positions(frame)
        tiles: dict[tuple[int, int], RingTile] = {}
        for side in SIDE_NAMES:
            seq = self.sides[side].sequence(k)
            if len(seq) != len(positions[side]):
                raise SynthesisError(
                    f"side sequence length {len(seq)} does not fit frame {frame}", side=side)
            tiles.update(zip(positions[side], seq))

        def index(pos: tuple[int, int]) -> int:
            r, c = pos
            if not (0 <= r < frame and 0 <= c < frame):
                raise SynthesisError(f"tile partner {pos} falls off the frame")
            return r * frame + c

        reset_gates = [Gate(tiles[pos].reset, (index(pos),))
                       for side in SIDE_NAMES for pos in positions[side]]
        cx_layers = []
        for pick in (lambda t: t.first, lambda t: t.second):
            chosen: dict[tuple[int, int], tuple[int, int]] = {}
            for side in SIDE_NAMES:
                for pos in positions[side]:
                    role = pick(tiles[pos])
                    if role is None:
                        continue
                    partner = (pos[0] + role.dr, pos[1] + role.dc)
                    pair = (index(pos), index(partner)) if role.control else (index(partner), index(pos))
                    key = (min(pair), max(pair))
                    if key in chosen:
                        if chosen[key] != pair:
                            raise SynthesisError(f"conflicting CX direction for pair {key}", side=side)
                        continue
                    chosen[key] = pair
            cx_layers.append([Gate(CX, pair) for pair in chosen.values()])

        try:
            return Circuit.empty_grid(frame, (
                Layer(tuple(reset_gates)),
                Layer(tuple(cx_layers[0])),
                Layer(tuple(cx_layers[1])),
            ))
        except ValidationError as exc:
            raise SynthesisError(f"instantiated stage is ill-formed: {exc}") from exc


@lru_cache(maxsize=None)
def growth_pattern(parity: str) -> GrowthPattern:
    """Extracts the reusable pattern from the two canonical stages."""
    small = stage_tiles(canonical_stage(parity, 0))
    big = stage_tiles(canonical_stage(parity, 1))
    sides = {side: _extract_side_pattern(side, small[side], big[side]) for side in SIDE_NAMES}
    return GrowthPattern(parity, PATTERN_BASE_DISTANCE[parity], sides)


@lru_cache(maxsize=None)
def growth_stage(distance: int) -> Circuit:
    """The depth-2 stage growing a distance-d patch to d + 2."""
    if distance < 2:
        raise ConfigError("distance must be at least 2")
    return growth_pattern(parity_of(distance)).instantiate(distance)


@lru_cache(maxsize=None)
def full_encoder(distance: int) -> Circuit:
    """The full nearest-neighbor encoder for any distance >= 2.

    Composes the parity-matching base encoder with growth stages. The
    result acts on the distance-sized grid; the single input qubit is
    the one qubit no reset touches.
    """
    if distance < 2:
        raise ConfigError("distance must be at least 2")
    if distance in (2, 3):
        return base_encoder(distance)
    inner = full_encoder(distance - 2).placed(distance, 1, 1)
    return inner.concat(growth_stage(distance - 2))


def input_qubit(circuit: Circuit) -> int:
    """The unique qubit an encoder never resets; its state is encoded."""
    free = circuit.never_reset_qubits()
    if len(free) != 1:
        raise ValidationError(f"expected exactly one never-reset qubit, found {sorted(free)}")
    return next(iter(free))


# ----------------------------------------------------------------------
# Count reporting
# ----------------------------------------------------------------------


def claimed_stage_cx(distance: int) -> int:
    """Recorded closed-form two-qubit count for the d to d+2 stage."""
    return 6 * distance + 6 if distance % 2 else 6 * distance + 5


def baseline_stage_cx(distance: int) -> int | None:
    """Prior-work two-qubit count for the same odd-distance step."""
    return 8 * distance + 4 if distance % 2 else None


@dataclass(frozen=True)
class StageCountReport:
    """Measured versus recorded two-qubit counts for one stage.

    claim_matches is False when the measured count disagrees with the
    recorded closed form; both numbers are always reported.
    """

    distance: int
    measured_cx: int
    claimed_cx: int
    claim_matches: bool
    baseline_cx: int | None

    @property
    def beats_baseline(self) -> bool | None:
        if self.baseline_cx is None:
            return None
        return self.measured_cx < self.baseline_cx


def stage_count_report(distance: int) -> StageCountReport:
    measured = growth_stage(distance).two_qubit_count
    claimed = claimed_stage_cx(distance)
    return StageCountReport(
        distance=distance,
        measured_cx=measured,
        claimed_cx=claimed,
        claim_matches=measured == claimed,
        baseline_cx=baseline_stage_cx(distance),
    )


@dataclass(frozen=True)
class EncoderStats:
    """Headline numbers for one full encoder."""

    distance: int
    qubits: int
    depth: int
    expected_depth: int
    cx_count: int
    reset_count: int
    s_dag_count: int
    local: bool
    input_qubit: int
    stage_report: StageCountReport

    @property
    def depth_matches(self) -> bool:
        return self.depth == self.expected_depth


def expected_depth(distance: int) -> int:
    """CX depth of the full encoder: d for even d, d + 1 for odd d."""
    return distance + (distance % 2)


def encoder_stats(distance: int) -> EncoderStats:
    """Measures the generated encoder plus the stage growing onward."""
    circuit = full_encoder(distance)
    counts = circuit.gate_counts()
    stage = stage_count_report(distance)
    return EncoderStats(
        distance=distance,
        qubits=circuit.n,
        depth=circuit.depth,
        expected_depth=expected_depth(distance),
        cx_count=counts[CX],
        reset_count=counts[RESET_Z] + counts[RESET_X],
        s_dag_count=counts[S_DAG],
        local=circuit.is_local,
        input_qubit=input_qubit(circuit),
        stage_report=stage,
    )


def strip_markers(circuit: Circuit) -> Circuit:
    """Copy of a circuit with all marker annotations removed."""
    return Circuit(circuit.coords, tuple(Layer(l.gates, ()) for l in circuit.layers))
