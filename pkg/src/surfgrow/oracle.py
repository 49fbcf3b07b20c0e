"""Exhaustive low-weight census and the depth-1 growth impossibility.

The census enumerates every weight-1 and weight-2 Pauli on a code's
grid (3n single-qubit letters plus 9 per qubit pair) and tests signed
membership in the stabilizer group. For rotated surface codes the
result is always the 2(d-1) boundary checks and nothing else.

The impossibility oracle turns the census into a depth bound: a growth
step from d to d+2 resets the 4(d+1) ring qubits, so right after one
CX layer the tracked group contains 4(d+1) independent operators of
weight at most 2. The target group only offers 2(d+3-2) = 2(d+1)
independent operators that small, so no depth-1 (or depth-0) growth
circuit exists and every stage needs depth at least 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .code import RotatedSurfaceCode, build_code
from .errors import ConfigError
from .pauli import PauliOperator, rank

_PHASE_EXPONENT = {1 + 0j: 0, 1j: 1, -1 + 0j: 2, -1j: 3}

# Largest grid the exhaustive census enumerates by default; above this
# the impossibility record falls back to the proven boundary count.
DEFAULT_CENSUS_CAP = 12


def _letters_to_operator(n: int, assignment: dict[int, str], phase: complex) -> PauliOperator:
    xb = zb = y_count = 0
    for q, letter in assignment.items():
        if letter in ("X", "Y"):
            xb |= 1 << q
        if letter in ("Z", "Y"):
            zb |= 1 << q
        if letter == "Y":
            y_count += 1
    return PauliOperator(n, xb, zb, (_PHASE_EXPONENT[phase] + y_count) % 4)


@dataclass(frozen=True)
class LowWeightCensus:
    """Every weight-1 and weight-2 element of a stabilizer group.

    Attributes:
        distance: Code distance the census was run on.
        qubits: Grid size in qubits.
        weight1_elements: Signed single-qubit members (expected empty).
        weight2_elements: Signed two-qubit members with the group's
            exact signs.
        independent_rank: GF(2) rank of all elements found.
    """

    distance: int
    qubits: int
    weight1_elements: tuple[PauliOperator, ...]
    weight2_elements: tuple[PauliOperator, ...]
    independent_rank: int

    @property
    def weight1_count(self) -> int:
        return len(self.weight1_elements)

    @property
    def weight2_count(self) -> int:
        return len(self.weight2_elements)

    def to_dict(self) -> dict:
        return {
            "distance": self.distance,
            "qubits": self.qubits,
            "weight1_count": self.weight1_count,
            "weight2_count": self.weight2_count,
            "independent_rank": self.independent_rank,
            "weight2_elements": [op.to_string() for op in self.weight2_elements],
        }


def low_weight_census(code: RotatedSurfaceCode) -> LowWeightCensus:
    """Enumerates all weight <= 2 members of the code's group."""
    group = code.stabilizer_set()
    n = code.n
    weight1 = []
    weight2 = []
    for q in range(n):
        for letter in ("X", "Y", "Z"):
            candidate = _letters_to_operator(n, {q: letter}, 1)
            m = group.member_with_sign(candidate)
            if m is not None:
                weight1.append(_letters_to_operator(n, {q: letter}, m.phase))
    for q1, q2 in combinations(range(n), 2):
        for l1 in ("X", "Y", "Z"):
            for l2 in ("X", "Y", "Z"):
                candidate = _letters_to_operator(n, {q1: l1, q2: l2}, 1)
                m = group.member_with_sign(candidate)
                if m is not None:
                    weight2.append(_letters_to_operator(n, {q1: l1, q2: l2}, m.phase))
    found = weight1 + weight2
    return LowWeightCensus(
        distance=code.distance,
        qubits=n,
        weight1_elements=tuple(weight1),
        weight2_elements=tuple(weight2),
        independent_rank=rank(n, found),
    )


def low_weight_rank_formula(distance: int) -> int:
    """Independent weight <= 2 members of a distance-d group: the
    boundary checks, 2(d-1) of them."""
    return 2 * (distance - 1)


@dataclass(frozen=True)
class ImpossibilityRecord:
    """Why a depth-1 circuit cannot grow distance d to d + 2.

    Attributes:
        start_distance: d, the distance being grown.
        ring_qubits: Fresh qubits a stage resets, 4(d+1); each
            contributes one independent weight <= 2 flow after a single
            CX layer.
        available_rank: Independent weight <= 2 members the distance
            d+2 group actually has.
        census_backed: True when available_rank came from the
            exhaustive census rather than the boundary-count formula.
    """

    start_distance: int
    ring_qubits: int
    available_rank: int
    census_backed: bool

    @property
    def impossible(self) -> bool:
        return self.available_rank < self.ring_qubits

    def to_dict(self) -> dict:
        return {
            "start_distance": self.start_distance,
            "end_distance": self.start_distance + 2,
            "ring_qubits": self.ring_qubits,
            "available_rank": self.available_rank,
            "census_backed": self.census_backed,
            "impossible": self.impossible,
        }

    def to_text(self) -> str:
        source = "exhaustive census" if self.census_backed else "boundary count"
        verdict = "impossible" if self.impossible else "NOT ruled out"
        return (
            f"growing {self.start_distance} -> {self.start_distance + 2} in depth 1: {verdict}\n"
            f"  fresh ring flows needing weight <= 2 images: {self.ring_qubits}\n"
            f"  independent weight <= 2 group members available ({source}): {self.available_rank}"
        )


def depth1_growth_impossible(distance: int,
                             census_cap: int = DEFAULT_CENSUS_CAP) -> ImpossibilityRecord:
    """Builds the impossibility record for growing distance to distance + 2.

    Runs the exhaustive census on the target code when its distance is
    within census_cap, otherwise uses the boundary-count formula and
    marks the record accordingly.
    """
    if distance < 2:
        raise ConfigError("distance must be at least 2")
    target = distance + 2
    ring = 4 * (distance + 1)
    if target <= census_cap:
        census = low_weight_census(build_code(target))
        return ImpossibilityRecord(distance, ring, census.independent_rank, True)
    return ImpossibilityRecord(distance, ring, low_weight_rank_formula(target), False)
