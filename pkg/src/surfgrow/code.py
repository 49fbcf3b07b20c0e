"""Rotated surface code patches on square grids.

A distance-d patch lives on a d by d array of data qubits. Interior
faces between four qubits alternate X and Z on a checkerboard; the top
and bottom boundaries carry weight-2 Z checks, the left and right
boundaries weight-2 X checks. One logical qubit survives: its X
representative runs along the top row, its Z representative down the
left column.

A patch can also be embedded into a larger grid at an offset, which is
how a distance-d code sits inside the frame of a distance d+2 grid
while a growth stage acts on the surrounding ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import ValidationError
from .pauli import PauliOperator, StabilizerSet


@dataclass(frozen=True, order=True)
class Coord:
    """Grid position, row-major with row 0 at the top."""

    row: int
    col: int

    def shifted(self, dr: int, dc: int) -> Coord:
        return Coord(self.row + dr, self.col + dc)

    def __str__(self) -> str:
        return f"({self.row},{self.col})"


@dataclass(frozen=True)
class RotatedSurfaceCode:
    """One rotated surface code patch placed on a square grid.

    Attributes:
        distance: Code distance d, at least 2.
        grid_size: Side length of the hosting grid; equals distance for
            a natural patch and exceeds it for an embedded one.
        offset: Top-left corner of the patch inside the hosting grid.
        x_stabilizers: Supports of the X checks as frozensets of grid
            indices (row-major over the hosting grid).
        z_stabilizers: Supports of the Z checks.
        logical_x: Support of the logical X representative.
        logical_z: Support of the logical Z representative.
    """

    distance: int
    grid_size: int
    offset: Coord
    x_stabilizers: tuple[frozenset[int], ...]
    z_stabilizers: tuple[frozenset[int], ...]
    logical_x: frozenset[int]
    logical_z: frozenset[int]

    @property
    def n(self) -> int:
        """Number of qubits of the hosting grid."""
        return self.grid_size * self.grid_size

    def index(self, coord: Coord) -> int:
        if not (0 <= coord.row < self.grid_size and 0 <= coord.col < self.grid_size):
            raise ValidationError(f"coordinate {coord} outside {self.grid_size}x{self.grid_size} grid")
        return coord.row * self.grid_size + coord.col

    def coord(self, index: int) -> Coord:
        if not 0 <= index < self.n:
            raise ValidationError(f"index {index} outside grid")
        return Coord(index // self.grid_size, index % self.grid_size)

    @property
    def patch_indices(self) -> frozenset[int]:
        """Grid indices covered by the patch itself."""
        return frozenset(
            (self.offset.row + r) * self.grid_size + (self.offset.col + c)
            for r in range(self.distance)
            for c in range(self.distance)
        )

    def stabilizer_operators(self) -> list[PauliOperator]:
        """All checks as +1-signed Pauli operators on the hosting grid."""
        ops = [PauliOperator.from_support(self.n, "X", sorted(s)) for s in self.x_stabilizers]
        ops += [PauliOperator.from_support(self.n, "Z", sorted(s)) for s in self.z_stabilizers]
        return ops

    def stabilizer_set(self) -> StabilizerSet:
        return StabilizerSet(self.n, tuple(self.stabilizer_operators()))

    def logical_x_operator(self) -> PauliOperator:
        return PauliOperator.from_support(self.n, "X", sorted(self.logical_x))

    def logical_z_operator(self) -> PauliOperator:
        return PauliOperator.from_support(self.n, "Z", sorted(self.logical_z))

    def logical_y_operator(self) -> PauliOperator:
        """Hermitian +1-phased Y logical: i times the X and Z logicals."""
        prod = self.logical_x_operator() * self.logical_z_operator()
        exponents = {1 + 0j: 0, 1j: 1, -1 + 0j: 2, -1j: 3}
        return PauliOperator(prod.n, prod.x_bits, prod.z_bits,
                             prod.phase_exponent - exponents[prod.phase])

    def validate(self) -> None:
        """Checks the full set of structural invariants.

        Raises ValidationError when counts, weights, commutation,
        independence, or logical behavior are off.
        """
        d = self.distance
        if len(self.x_stabilizers) + len(self.z_stabilizers) != d * d - 1:
            raise ValidationError("stabilizer count must be d*d-1")
        interior = [s for s in self.x_stabilizers + self.z_stabilizers if len(s) == 4]
        boundary = [s for s in self.x_stabilizers + self.z_stabilizers if len(s) == 2]
        if len(interior) != (d - 1) * (d - 1) or len(boundary) != 2 * (d - 1):
            raise ValidationError("stabilizer weights must split into (d-1)^2 of weight 4 and 2(d-1) of weight 2")
        group = self.stabilizer_set()
        lx = self.logical_x_operator()
        lz = self.logical_z_operator()
        if lx.commutes_with(lz):
            raise ValidationError("logical X and Z must anticommute")
        for logical in (lx, lz):
            for g in group.generators:
                if not logical.commutes_with(g):
                    raise ValidationError("logical operators must commute with every check")
            if group.contains_vector(logical):
                raise ValidationError("logical operator lies inside the stabilizer group")
        patch = self.patch_indices
        for s in self.x_stabilizers + self.z_stabilizers:
            if not s <= patch:
                raise ValidationError("stabilizer leaves the patch")


def _face_is_x(row: int, col: int) -> bool:
    """Checkerboard rule for the face whose top-left corner is (row, col)."""
    return (row + col) % 2 == 0


@lru_cache(maxsize=None)
def build_code(distance: int) -> RotatedSurfaceCode:
    """Builds the natural distance-d patch on its own d by d grid.

    Args:
        distance: Code distance, at least 2.
    """
    d = distance
    if d < 2:
        raise ValidationError("distance must be at least 2")

    def idx(r: int, c: int) -> int:
        return r * d + c

    x_stabs: list[frozenset[int]] = []
    z_stabs: list[frozenset[int]] = []
    for r in range(d - 1):
        for c in range(d - 1):
            face = frozenset({idx(r, c), idx(r, c + 1), idx(r + 1, c), idx(r + 1, c + 1)})
            (x_stabs if _face_is_x(r, c) else z_stabs).append(face)
    for c in range(d - 1):
        # Top and bottom boundary checks are Z; each continues the
        # checkerboard into the Z-type face just outside the grid.
        if not _face_is_x(-1, c):
            z_stabs.append(frozenset({idx(0, c), idx(0, c + 1)}))
        if not _face_is_x(d - 1, c):
            z_stabs.append(frozenset({idx(d - 1, c), idx(d - 1, c + 1)}))
    for r in range(d - 1):
        # Left and right boundary checks are X on X-type outside faces.
        if _face_is_x(r, -1):
            x_stabs.append(frozenset({idx(r, 0), idx(r + 1, 0)}))
        if _face_is_x(r, d - 1):
            x_stabs.append(frozenset({idx(r, d - 1), idx(r + 1, d - 1)}))

    code = RotatedSurfaceCode(
        distance=d,
        grid_size=d,
        offset=Coord(0, 0),
        x_stabilizers=tuple(sorted(x_stabs, key=sorted)),
        z_stabilizers=tuple(sorted(z_stabs, key=sorted)),
        logical_x=frozenset(idx(0, c) for c in range(d)),
        logical_z=frozenset(idx(r, 0) for r in range(d)),
    )
    code.validate()
    return code


def embed(code: RotatedSurfaceCode, grid_size: int, offset: Coord) -> RotatedSurfaceCode:
    """Re-indexes a natural patch into a larger hosting grid.

    Args:
        code: A patch hosted on its own grid (grid_size == distance).
        grid_size: Side length of the new hosting grid.
        offset: Top-left corner for the patch in the new grid.
    """
    if code.grid_size != code.distance or code.offset != Coord(0, 0):
        raise ValidationError("only natural patches can be embedded")
    d = code.distance
    if offset.row < 0 or offset.col < 0 or offset.row + d > grid_size or offset.col + d > grid_size:
        raise ValidationError(f"patch of distance {d} at {offset} does not fit a {grid_size} grid")

    def remap(index: int) -> int:
        r, c = index // d, index % d
        return (r + offset.row) * grid_size + (c + offset.col)

    return RotatedSurfaceCode(
        distance=d,
        grid_size=grid_size,
        offset=offset,
        x_stabilizers=tuple(frozenset(remap(q) for q in s) for s in code.x_stabilizers),
        z_stabilizers=tuple(frozenset(remap(q) for q in s) for s in code.z_stabilizers),
        logical_x=frozenset(remap(q) for q in code.logical_x),
        logical_z=frozenset(remap(q) for q in code.logical_z),
    )


def describe(code: RotatedSurfaceCode) -> str:
    """Plain-text summary listing every check and the logicals."""
    lines = [
        f"distance {code.distance} on {code.grid_size}x{code.grid_size} grid at {code.offset}",
        f"qubits {code.n}, checks {len(code.x_stabilizers) + len(code.z_stabilizers)}",
    ]
    for name, stabs in (("X", code.x_stabilizers), ("Z", code.z_stabilizers)):
        for s in stabs:
            lines.append(f"{name} " + " ".join(str(q) for q in sorted(s)))
    lines.append("LX " + " ".join(str(q) for q in sorted(code.logical_x)))
    lines.append("LZ " + " ".join(str(q) for q in sorted(code.logical_z)))
    return "\n".join(lines)
