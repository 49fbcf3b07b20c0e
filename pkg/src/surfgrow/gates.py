"""Gate records shared by the circuit layer and the Pauli conjugation rules.

Only the four operations that encoding circuits use are modeled: Z and X
basis resets, CX, and S_DAG. Gate names double as the text tokens of the
circuit dialect.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ValidationError

RESET_Z = "R"
RESET_X = "RX"
CX = "CX"
S_DAG = "S_DAG"

GATE_NAMES = (RESET_Z, RESET_X, CX, S_DAG)

RESET_NAMES = frozenset({RESET_Z, RESET_X})


@dataclass(frozen=True)
class Gate:
    """One gate application.

    Attributes:
        name: One of the GATE_NAMES tokens.
        qubits: Target qubit indices. CX gates carry exactly
            (control, target); the other gates carry a single index.
    """

    name: str
    qubits: tuple[int, ...]

    def __post_init__(self):
        if self.name not in GATE_NAMES:
            raise ValidationError(f"unknown gate name {self.name!r}")
        arity = 2 if self.name == CX else 1
        if len(self.qubits) != arity:
            raise ValidationError(f"{self.name} takes {arity} qubit(s), got {self.qubits}")
        if self.name == CX and self.qubits[0] == self.qubits[1]:
            raise ValidationError("CX control and target must differ")

    @property
    def is_reset(self) -> bool:
        return self.name in RESET_NAMES


def reset_z(q: int) -> Gate:
    return Gate(RESET_Z, (q,))


def reset_x(q: int) -> Gate:
    return Gate(RESET_X, (q,))


def cx(control: int, target: int) -> Gate:
    return Gate(CX, (control, target))


def s_dag(q: int) -> Gate:
    return Gate(S_DAG, (q,))
