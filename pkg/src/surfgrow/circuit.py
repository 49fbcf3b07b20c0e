"""Layered circuit representation with a text dialect, windows, and moves.

Circuit text is a single line of statements joined by semicolons.
Statements are qubit declarations "Q(row,col)index", gate applications
"R_0_2", "RX_1", "S_DAG_4", "CX_7_4_3_6" (flat control target pairs),
marker annotations "MARKX(n)3_7" or "MARKZ(n)1", and the layer
separator "TICK". Markers are preserved annotations naming seed
operators at the layer where they appear; they never affect gate
semantics. The parser also accepts a full sharing URL and pulls out the
part after "circuit=", undoing backslash-escaped hashes and percent
encoding first.

The emitter is canonical: declarations in index order, then per layer
the R, RX, S_DAG, CX statements with sorted arguments, then MARKX and
MARKZ annotations. Two circuits with equal content serialize to
byte-identical text.
"""

from __future__ import annotations

import json
import re
import urllib.parse
from dataclasses import dataclass

from .code import Coord
from .errors import ParseError, ValidationError
from .gates import CX, GATE_NAMES, RESET_X, RESET_Z, S_DAG, Gate

_URL_PREFIX = "https://algassert.com/crumble#circuit="

_DECL_RE = re.compile(r"^Q\((-?\d+),(-?\d+)\)(\d+)$")
_MARK_RE = re.compile(r"^MARK([XZ])\((\d+)\)(\d+(?:_\d+)*)$")


@dataclass(frozen=True)
class Marker:
    """Named seed annotation: a basis letter over a set of qubits.

    Attributes:
        basis: "X" or "Z".
        index: Nonnegative label carried in the text form.
        qubits: Sorted tuple of qubit indices.
    """

    basis: str
    index: int
    qubits: tuple[int, ...]

    def __post_init__(self):
        if self.basis not in ("X", "Z"):
            raise ValidationError(f"marker basis must be X or Z, got {self.basis!r}")
        if self.index < 0:
            raise ValidationError("marker index must be nonnegative")
        if not self.qubits or tuple(sorted(set(self.qubits))) != self.qubits:
            raise ValidationError("marker qubits must be nonempty, sorted, and unique")


@dataclass(frozen=True)
class Layer:
    """One time step: gates acting in parallel plus annotations."""

    gates: tuple[Gate, ...] = ()
    markers: tuple[Marker, ...] = ()

    def touched_qubits(self) -> set[int]:
        out: set[int] = set()
        for g in self.gates:
            out.update(g.qubits)
        return out

    @property
    def has_cx(self) -> bool:
        return any(g.name == CX for g in self.gates)

    @property
    def is_empty(self) -> bool:
        return not self.gates and not self.markers


@dataclass(frozen=True)
class Circuit:
    """Immutable layered circuit over declared qubit coordinates.

    Attributes:
        coords: Coordinate of each qubit; position in the tuple is the
            qubit index.
        layers: The time steps in order.
    """

    coords: tuple[Coord, ...]
    layers: tuple[Layer, ...]

    def __post_init__(self):
        if len(set(self.coords)) != len(self.coords):
            raise ValidationError("duplicate qubit coordinates")
        n = len(self.coords)
        for li, layer in enumerate(self.layers):
            seen: set[int] = set()
            for g in layer.gates:
                for q in g.qubits:
                    if not 0 <= q < n:
                        raise ValidationError(f"layer {li}: qubit {q} not declared")
                    if q in seen:
                        raise ValidationError(f"layer {li}: qubit {q} used by two gates")
                    seen.add(q)
            for m in layer.markers:
                for q in m.qubits:
                    if not 0 <= q < n:
                        raise ValidationError(f"layer {li}: marker qubit {q} not declared")

    @property
    def n(self) -> int:
        return len(self.coords)

    @property
    def grid_size(self) -> int:
        """Side length when the coordinates are exactly a row-major
        square grid starting at (0,0); raises otherwise."""
        size = round(len(self.coords) ** 0.5)
        if size * size != len(self.coords):
            raise ValidationError("qubit count is not a perfect square")
        for i, c in enumerate(self.coords):
            if c != Coord(i // size, i % size):
                raise ValidationError("coordinates are not a row-major square grid")
        return size

    @classmethod
    def empty_grid(cls, size: int, layers: tuple[Layer, ...] = ()) -> Circuit:
        coords = tuple(Coord(r, c) for r in range(size) for c in range(size))
        return cls(coords, layers)

    # ------------------------------------------------------------------
    # Metrics
    # ------------------------------------------------------------------

    @property
    def depth(self) -> int:
        """Number of layers that apply at least one CX.

        Reset and S_DAG layers are not counted: the depth claim of an
        encoder concerns rounds of two-qubit interaction.
        """
        return sum(1 for layer in self.layers if layer.has_cx)

    @property
    def two_qubit_count(self) -> int:
        return sum(1 for layer in self.layers for g in layer.gates if g.name == CX)

    def gate_counts(self) -> dict[str, int]:
        counts = {name: 0 for name in GATE_NAMES}
        for layer in self.layers:
            for g in layer.gates:
                counts[g.name] += 1
        return counts

    def locality_violations(self) -> list[Gate]:
        """CX gates whose endpoints are not edge-adjacent on the grid."""
        bad = []
        for layer in self.layers:
            for g in layer.gates:
                if g.name != CX:
                    continue
                a, b = self.coords[g.qubits[0]], self.coords[g.qubits[1]]
                if abs(a.row - b.row) + abs(a.col - b.col) != 1:
                    bad.append(g)
        return bad

    @property
    def is_local(self) -> bool:
        return not self.locality_violations()

    def never_reset_qubits(self) -> frozenset[int]:
        """Qubits no reset ever touches; these carry circuit input."""
        reset: set[int] = set()
        for layer in self.layers:
            for g in layer.gates:
                if g.is_reset:
                    reset.update(g.qubits)
        return frozenset(range(self.n)) - frozenset(reset)

    # ------------------------------------------------------------------
    # Structure edits
    # ------------------------------------------------------------------

    def canonicalized(self) -> Circuit:
        """Drops layers that contain neither gates nor markers."""
        return Circuit(self.coords, tuple(l for l in self.layers if not l.is_empty))

    def concat(self, other: Circuit) -> Circuit:
        if self.coords != other.coords:
            raise ValidationError("cannot concatenate circuits over different qubits")
        return Circuit(self.coords, self.layers + other.layers)

    def layer_slice(self, start: int, stop: int) -> Circuit:
        return Circuit(self.coords, self.layers[start:stop])

    def extract_window(self, row0: int, col0: int, size: int,
                       layer_start: int = 0, layer_stop: int | None = None) -> Circuit:
        """Cuts out a size-by-size coordinate window over a layer range.

        Kept qubits are renumbered row-major inside the window, and the
        result declares the full window grid. A gate with one endpoint
        inside and one outside the window is an error. A marker is kept
        when fully inside and dropped when fully outside; straddling
        markers are an error.
        """
        stop = len(self.layers) if layer_stop is None else layer_stop
        remap: dict[int, int] = {}
        for i, c in enumerate(self.coords):
            if row0 <= c.row < row0 + size and col0 <= c.col < col0 + size:
                remap[i] = (c.row - row0) * size + (c.col - col0)
        new_layers = []
        for li in range(layer_start, stop):
            layer = self.layers[li]
            gates = []
            for g in layer.gates:
                inside = [q in remap for q in g.qubits]
                if all(inside):
                    gates.append(Gate(g.name, tuple(remap[q] for q in g.qubits)))
                elif any(inside):
                    raise ValidationError(f"layer {li}: window cuts gate {g.name}{g.qubits}")
            markers = []
            for m in layer.markers:
                inside = [q in remap for q in m.qubits]
                if all(inside):
                    markers.append(Marker(m.basis, m.index, tuple(sorted(remap[q] for q in m.qubits))))
                elif any(inside):
                    raise ValidationError(f"layer {li}: window cuts marker ({m.basis},{m.index})")
            new_layers.append(Layer(tuple(gates), tuple(markers)))
        return Circuit.empty_grid(size, tuple(new_layers))

    def placed(self, grid_size: int, row0: int, col0: int) -> Circuit:
        """Re-hosts this circuit on a larger row-major grid at an offset."""
        my_size = self.grid_size
        if row0 < 0 or col0 < 0 or row0 + my_size > grid_size or col0 + my_size > grid_size:
            raise ValidationError("placement does not fit the target grid")

        def remap(q: int) -> int:
            r, c = q // my_size, q % my_size
            return (r + row0) * grid_size + (c + col0)

        layers = tuple(
            Layer(
                tuple(Gate(g.name, tuple(remap(q) for q in g.qubits)) for g in layer.gates),
                tuple(Marker(m.basis, m.index, tuple(sorted(remap(q) for q in m.qubits)))
                      for m in layer.markers),
            )
            for layer in self.layers
        )
        return Circuit.empty_grid(grid_size, layers)

    # ------------------------------------------------------------------
    # Serialization
    # ------------------------------------------------------------------

    def to_text(self) -> str:
        """Canonical single-line dialect form."""
        parts = [f"Q({c.row},{c.col}){i}" for i, c in enumerate(self.coords)]
        for li, layer in enumerate(self.layers):
            if li > 0:
                parts.append("TICK")
            for name in (RESET_Z, RESET_X, S_DAG):
                args = sorted(q for g in layer.gates if g.name == name for q in g.qubits)
                if args:
                    parts.append(name + "_" + "_".join(str(q) for q in args))
            pairs = sorted(g.qubits for g in layer.gates if g.name == CX)
            if pairs:
                flat = [str(q) for pair in pairs for q in pair]
                parts.append("CX_" + "_".join(flat))
            for basis in ("X", "Z"):
                for m in sorted((m for m in layer.markers if m.basis == basis),
                                key=lambda m: (m.index, m.qubits)):
                    parts.append(f"MARK{basis}({m.index})" + "_".join(str(q) for q in m.qubits))
        return ";".join(parts)

    def to_url(self) -> str:
        return _URL_PREFIX + self.to_text()

    def to_records(self) -> list[dict]:
        """Structured per-layer gate and marker records."""
        records: list[dict] = []
        for li, layer in enumerate(self.layers):
            for g in layer.gates:
                records.append({"layer": li, "op": g.name, "qubits": list(g.qubits)})
            for m in layer.markers:
                records.append({
                    "layer": li,
                    "op": f"MARK{m.basis}",
                    "index": m.index,
                    "qubits": list(m.qubits),
                })
        return records

    def to_records_json(self) -> str:
        payload = {
            "qubits": [{"index": i, "row": c.row, "col": c.col} for i, c in enumerate(self.coords)],
            "layers": len(self.layers),
            "records": self.to_records(),
        }
        return json.dumps(payload, indent=2, sort_keys=True)


def _clean_source(text: str) -> str:
    """Extracts the dialect payload from raw text or a sharing URL."""
    cleaned = text.replace("\\#", "#")
    marker = "circuit="
    pos = cleaned.find(marker)
    if pos >= 0:
        cleaned = cleaned[pos + len(marker):]
    cleaned = urllib.parse.unquote(cleaned)
    return re.sub(r"\s+", "", cleaned)


def _parse_int_args(body: str, offset: int, statement: str) -> list[int]:
    if not body:
        raise ParseError("gate has no arguments", offset, statement)
    try:
        return [int(tok) for tok in body.split("_")]
    except ValueError:
        raise ParseError("gate arguments must be integers", offset, statement) from None


def parse_text(text: str) -> Circuit:
    """Parses dialect text (or a sharing URL containing it).

    Raises ParseError with the character offset of the offending
    statement within the cleaned text.
    """
    cleaned = _clean_source(text)
    if not cleaned:
        raise ParseError("empty circuit text")
    coords: list[Coord] = []
    index_seen: set[int] = set()
    layers: list[tuple[list[Gate], list[Marker]]] = [([], [])]
    gates_started = False

    offset = 0
    for statement in cleaned.split(";"):
        start = offset
        offset += len(statement) + 1
        if not statement:
            continue
        decl = _DECL_RE.match(statement)
        if decl:
            if gates_started:
                raise ParseError("qubit declared after gates began", start, statement)
            row, col, index = int(decl.group(1)), int(decl.group(2)), int(decl.group(3))
            if index in index_seen:
                raise ParseError(f"qubit index {index} declared twice", start, statement)
            index_seen.add(index)
            coords.append((index, Coord(row, col)))
            continue
        if statement == "TICK":
            gates_started = True
            layers.append(([], []))
            continue
        mark = _MARK_RE.match(statement)
        if mark:
            gates_started = True
            qubits = _parse_int_args(mark.group(3), start, statement)
            layers[-1][1].append(Marker(mark.group(1), int(mark.group(2)), tuple(sorted(set(qubits)))))
            continue
        parsed_gate = False
        for name in (S_DAG, RESET_X, RESET_Z, CX):
            if statement.startswith(name + "_"):
                gates_started = True
                args = _parse_int_args(statement[len(name) + 1:], start, statement)
                if name == CX:
                    if len(args) % 2 != 0:
                        raise ParseError("CX needs an even number of arguments", start, statement)
                    for c, t in zip(args[::2], args[1::2]):
                        layers[-1][0].append(Gate(CX, (c, t)))
                else:
                    for q in args:
                        layers[-1][0].append(Gate(name, (q,)))
                parsed_gate = True
                break
        if parsed_gate:
            continue
        raise ParseError("unrecognized statement", start, statement)

    if not coords:
        raise ParseError("no qubit declarations found")
    coords.sort()
    indices = [i for i, _ in coords]
    if indices != list(range(len(indices))):
        raise ParseError(f"qubit indices must cover 0..{len(indices) - 1} exactly")
    try:
        return Circuit(
            tuple(c for _, c in coords),
            tuple(Layer(tuple(gs), tuple(ms)) for gs, ms in layers),
        )
    except ValidationError as exc:
        raise ParseError(str(exc)) from exc
