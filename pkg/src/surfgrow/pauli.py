"""Phase-exact Pauli operators and stabilizer sets over bit masks.

An n-qubit Pauli is stored in the canonical form

    P = i^r * (X-block) * (Z-block)

where the X and Z blocks are products of single-qubit X and Z factors
described by two n-bit masks and r is an exponent mod 4. The canonical
order (all X factors to the left of all Z factors) makes multiplication
and Clifford conjugation exact integer arithmetic, including signs.

The printable phase of an operator is the coefficient in front of its
letter string (I, X, Y, Z per qubit). A qubit with both mask bits set
contributes a Y letter and X*Z = -i*Y, so the printable exponent is
(r - y_count) mod 4.

StabilizerSet keeps its generators in a lowest-pivot echelon table over
GF(2). Each echelon row also carries the exact Pauli product of the
generators that built it, so membership queries return the sign of the
matching group element, not just a yes or no.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ValidationError
from .gates import CX, RESET_NAMES, S_DAG, Gate

_PHASE_VALUES = (1 + 0j, 1j, -1 + 0j, -1j)
_PHASE_PREFIX = {0: "+", 1: "+i", 2: "-", 3: "-i"}
_PREFIX_PHASE = {"+": 0, "+i": 1, "-": 2, "-i": 3, "i": 1}
_LETTER_BITS = {"_": (0, 0), "I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}
_BITS_LETTER = {(0, 0): "_", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}


def _lowest_bit(v: int) -> int:
    """Index of the least significant set bit of a nonzero integer."""
    return (v & -v).bit_length() - 1


@dataclass(frozen=True)
class PauliOperator:
    """Immutable n-qubit Pauli operator with exact phase.

    Attributes:
        n: Number of qubits.
        x_bits: Mask of qubits carrying an X factor.
        z_bits: Mask of qubits carrying a Z factor.
        phase_exponent: Exponent r of the i^r prefactor in the
            X-block-then-Z-block canonical form, reduced mod 4.
    """

    n: int
    x_bits: int = 0
    z_bits: int = 0
    phase_exponent: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValidationError("qubit count must be nonnegative")
        limit = 1 << self.n
        if not (0 <= self.x_bits < limit and 0 <= self.z_bits < limit):
            raise ValidationError("mask exceeds qubit count")
        object.__setattr__(self, "phase_exponent", self.phase_exponent % 4)

    @classmethod
    def identity(cls, n: int) -> PauliOperator:
        return cls(n)

    @classmethod
    def from_support(cls, n: int, letter: str, qubits, sign: int = 1) -> PauliOperator:
        """Builds sign * (letter on each listed qubit, identity elsewhere).

        Args:
            n: Number of qubits.
            letter: One of "X", "Y", "Z".
            qubits: Iterable of qubit indices.
            sign: +1 or -1.
        """
        if letter not in ("X", "Y", "Z"):
            raise ValidationError(f"unsupported letter {letter!r}")
        if sign not in (1, -1):
            raise ValidationError("sign must be +1 or -1")
        xb = zb = 0
        count = 0
        for q in qubits:
            if not 0 <= q < n:
                raise ValidationError(f"qubit {q} out of range for n={n}")
            bit = 1 << q
            if (xb | zb) & bit:
                raise ValidationError(f"qubit {q} listed twice")
            count += 1
            if letter in ("X", "Y"):
                xb |= bit
            if letter in ("Z", "Y"):
                zb |= bit
        y_count = count if letter == "Y" else 0
        r = (y_count + (0 if sign == 1 else 2)) % 4
        return cls(n, xb, zb, r)

    @classmethod
    def from_string(cls, text: str) -> PauliOperator:
        """Parses strings like "+XZ_Y", "-ZZ", "+iY_", "XX".

        The optional prefix is one of +, -, +i, -i (bare i reads as +i);
        letters are X, Y, Z and _ or I for identity positions.
        """
        body = text
        sign_exp = 0
        for prefix in ("+i", "-i", "+", "-", "i"):
            if body.startswith(prefix):
                sign_exp = _PREFIX_PHASE[prefix]
                body = body[len(prefix):]
                break
        if not body:
            raise ValidationError(f"empty Pauli string {text!r}")
        xb = zb = y_count = 0
        for q, letter in enumerate(body):
            if letter not in _LETTER_BITS:
                raise ValidationError(f"bad Pauli letter {letter!r} in {text!r}")
            x, z = _LETTER_BITS[letter]
            xb |= x << q
            zb |= z << q
            y_count += x & z
        return cls(len(body), xb, zb, (sign_exp + y_count) % 4)

    @property
    def weight(self) -> int:
        """Number of qubits acted on nontrivially."""
        return (self.x_bits | self.z_bits).bit_count()

    @property
    def support(self) -> int:
        """Mask of qubits acted on nontrivially."""
        return self.x_bits | self.z_bits

    @property
    def symplectic(self) -> int:
        """The GF(2) row vector (x_bits, z_bits) packed into one int."""
        return self.x_bits | (self.z_bits << self.n)

    @property
    def phase(self) -> complex:
        """Coefficient in front of the letter string, one of 1, i, -1, -i."""
        y_count = (self.x_bits & self.z_bits).bit_count()
        return _PHASE_VALUES[(self.phase_exponent - y_count) % 4]

    @property
    def is_hermitian(self) -> bool:
        return self.phase in (1, -1)

    def acts_on(self, q: int) -> bool:
        return bool((self.x_bits | self.z_bits) >> q & 1)

    def letter_at(self, q: int) -> str:
        return _BITS_LETTER[(self.x_bits >> q & 1, self.z_bits >> q & 1)]

    def commutes_with(self, other: PauliOperator) -> bool:
        if self.n != other.n:
            raise ValidationError("operators act on different qubit counts")
        clashes = (self.x_bits & other.z_bits).bit_count() + (self.z_bits & other.x_bits).bit_count()
        return clashes % 2 == 0

    def __mul__(self, other: PauliOperator) -> PauliOperator:
        if self.n != other.n:
            raise ValidationError("operators act on different qubit counts")
        # Moving other's X block left past self's Z block flips a sign
        # per overlapping qubit.
        swaps = (self.z_bits & other.x_bits).bit_count()
        r = (self.phase_exponent + other.phase_exponent + 2 * swaps) % 4
        return PauliOperator(self.n, self.x_bits ^ other.x_bits, self.z_bits ^ other.z_bits, r)

    def negated(self) -> PauliOperator:
        return PauliOperator(self.n, self.x_bits, self.z_bits, self.phase_exponent + 2)

    def conjugated_by(self, gate: Gate) -> PauliOperator:
        """Returns U P U^dagger for a unitary gate U.

        CX maps X_c to X_c X_t and Z_t to Z_c Z_t with no phase change in
        the canonical form. S_DAG maps X to -Y and fixes Z, which in the
        canonical form toggles the Z bit under an X bit and adds i^3.
        Reset gates are rejected: they are not unitary.
        """
        if gate.name in RESET_NAMES:
            raise ValidationError(f"{gate.name} is not unitary and cannot conjugate")
        x, z, r = self.x_bits, self.z_bits, self.phase_exponent
        if gate.name == CX:
            c, t = gate.qubits
            if x >> c & 1:
                x ^= 1 << t
            if z >> t & 1:
                z ^= 1 << c
        elif gate.name == S_DAG:
            (q,) = gate.qubits
            if x >> q & 1:
                z ^= 1 << q
                r += 3
        return PauliOperator(self.n, x, z, r)

    def to_string(self) -> str:
        y_count = (self.x_bits & self.z_bits).bit_count()
        prefix = _PHASE_PREFIX[(self.phase_exponent - y_count) % 4]
        letters = "".join(self.letter_at(q) for q in range(self.n))
        return prefix + letters

    def __str__(self) -> str:
        return self.to_string()


def conjugate(p: PauliOperator, gate: Gate) -> PauliOperator:
    """Module-level alias for PauliOperator.conjugated_by."""
    return p.conjugated_by(gate)


def rank(n: int, operators) -> int:
    """GF(2) rank of the symplectic vectors of the given operators."""
    pivots: dict[int, int] = {}
    for op in operators:
        if op.n != n:
            raise ValidationError("operator qubit count mismatch")
        v = op.symplectic
        while v:
            p = _lowest_bit(v)
            if p not in pivots:
                pivots[p] = v
                break
            v ^= pivots[p]
    return len(pivots)


@dataclass(frozen=True)
class Membership:
    """Result of a successful signed membership query.

    Attributes:
        combination: Mask over generator indices whose product matches
            the queried symplectic vector.
        phase: Printable phase of that product, so the group element is
            phase * (letter string of the query).
    """

    combination: int
    phase: complex


@dataclass(frozen=True)
class _EchelonRow:
    pivot: int
    vector: int
    combination: int
    product: PauliOperator


@dataclass(frozen=True)
class StabilizerSet:
    """A list of independent, pairwise commuting, Hermitian Paulis.

    Construction validates all three invariants and builds the echelon
    table used by membership queries; invalid input raises
    ValidationError.
    """

    n: int
    generators: tuple[PauliOperator, ...]
    _rows: dict[int, _EchelonRow] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        rows: dict[int, _EchelonRow] = {}
        for idx, g in enumerate(self.generators):
            if g.n != self.n:
                raise ValidationError(f"generator {idx} acts on {g.n} qubits, expected {self.n}")
            if not g.is_hermitian:
                raise ValidationError(f"generator {idx} has non-real phase {g.to_string()!r}")
            for jdx in range(idx):
                if not g.commutes_with(self.generators[jdx]):
                    raise ValidationError(f"generators {jdx} and {idx} anticommute")
            v, combo, prod = g.symplectic, 1 << idx, g
            while v:
                p = _lowest_bit(v)
                row = rows.get(p)
                if row is None:
                    rows[p] = _EchelonRow(p, v, combo, prod)
                    break
                v ^= row.vector
                combo ^= row.combination
                prod = prod * row.product
            else:
                raise ValidationError(f"generator {idx} is dependent on earlier ones")
        object.__setattr__(self, "_rows", rows)

    def __len__(self) -> int:
        return len(self.generators)

    def member_with_sign(self, p: PauliOperator) -> Membership | None:
        """Looks up the group element with p's symplectic vector.

        Returns None when the vector is outside the generated row space.
        Otherwise returns which generators build it and the phase of
        that product; the caller compares phases to decide signed
        membership.
        """
        if p.n != self.n:
            raise ValidationError("operator qubit count mismatch")
        v = p.symplectic
        combo = 0
        prod = PauliOperator.identity(self.n)
        while v:
            row = self._rows.get(_lowest_bit(v))
            if row is None:
                return None
            v ^= row.vector
            combo ^= row.combination
            prod = prod * row.product
        return Membership(combo, prod.phase)

    def contains_signed(self, p: PauliOperator) -> bool:
        """True when p itself (vector and phase) lies in the group."""
        m = self.member_with_sign(p)
        return m is not None and m.phase == p.phase

    def contains_vector(self, p: PauliOperator) -> bool:
        """True when p's vector lies in the row space, sign ignored."""
        return self.member_with_sign(p) is not None

    def same_group_as(self, other: StabilizerSet) -> tuple[bool, bool]:
        """Compares generated groups.

        Returns:
            (vectors_match, signs_match): vectors_match is row-space
            equality; signs_match additionally requires every generator
            of each set to appear in the other with its exact sign.
            signs_match is False whenever vectors_match is False.
        """
        if self.n != other.n or len(self) != len(other):
            return (False, False)
        signs = True
        # Equal generator counts plus independence make one spanning
        # direction enough for row-space equality; both directions are
        # still checked for signs.
        for mine, theirs in ((self, other), (other, self)):
            for g in theirs.generators:
                m = mine.member_with_sign(g)
                if m is None:
                    return (False, False)
                if m.phase != g.phase:
                    signs = False
        return (True, signs)
