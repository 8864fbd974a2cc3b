"""
Qubit layouts for one-hot and dense codon encodings

Dense patterns are big-endian (leftmost bit is the highest value), one-hot
patterns count the set bit from the left. Codon index k is the k-th codon of
the family in canonical A<C<G<U order.
"""
import enum
import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

import numpy as np

from . import exceptions
from .bio_io import AminoAcid, CodonTable, ProteinSequence
from .constants import LOGGER_NAME
from .pbp import PBP, as_bits

logger = logging.getLogger(LOGGER_NAME)


class Scheme(enum.Enum):
    """
    Codon encoding scheme
    """
    ONE_HOT = 'onehot'
    DENSE = 'dense'

    @classmethod
    def parse(cls, value):
        """
        Accept scheme names as used on the command line
        """
        if isinstance(value, cls):
            return value
        normalized = str(value).strip().lower().replace('-', '').replace('_', '')
        for scheme in cls:
            if scheme.value == normalized:
                return scheme
        raise exceptions.ValidationError(f"unknown scheme {value!r}, expected dense or onehot")


@dataclass(frozen=True)
class Fragment:
    """
    Contiguous piece of a protein optimized on its own
    """
    residues: Tuple[AminoAcid, ...]
    protein_id: str = ''
    start: int = 0

    def __post_init__(self):
        if len(self.residues) == 0:
            raise exceptions.EmptySequence('fragment has no residues')
        if self.start < 0:
            raise exceptions.ValidationError(f"fragment start {self.start} is negative")

    def __len__(self):
        return len(self.residues)

    @property
    def origin(self) -> Tuple[str, int, int]:
        """
        (protein id, start index, length)
        """
        return (self.protein_id, self.start, len(self.residues))

    @property
    def sequence(self) -> str:
        """
        Residues as a one-letter string
        """
        return ''.join(self.residues)

    @classmethod
    def from_string(cls, residues: str, protein_id: str = '', start: int = 0):
        """
        Fragment from a one-letter residue string
        """
        return cls(residues=tuple(residues.strip().upper()), protein_id=protein_id, start=start)

    @classmethod
    def from_protein(cls, protein: ProteinSequence):
        """
        Whole protein as a single fragment
        """
        return cls(residues=protein.residues, protein_id=protein.id, start=0)


def dense_width(count: int) -> int:
    """
    ceil(log2 count), zero for a single codon
    """
    return (count - 1).bit_length()


def position_width(count: int, scheme: Scheme) -> int:
    """
    Qubits used by one position with `count` synonymous codons
    """
    return dense_width(count) if scheme is Scheme.DENSE else count


@dataclass(frozen=True)
class EncodingLayout:
    """
    Per-position qubit widths, offsets and codon orders of a fragment
    """
    scheme: Scheme
    fragment: Fragment
    widths: Tuple[int, ...]
    offsets: Tuple[int, ...]
    codon_orders: Tuple[Tuple[str, ...], ...]
    total_qubits: int

    def __len__(self):
        return len(self.widths)

    def codon_count(self, position: int) -> int:
        """
        Number of synonymous codons at a position
        """
        return len(self.codon_orders[position])

    def qubits(self, position: int) -> range:
        """
        Global qubit indices of a position
        """
        return range(self.offsets[position], self.offsets[position] + self.widths[position])

    def pattern(self, position: int, codon_index: int) -> Tuple[int, ...]:
        """
        Bit pattern selecting a codon at a position
        """
        count = self.codon_count(position)
        if not 0 <= codon_index < count:
            raise exceptions.IndexOutOfRange(
                f"codon index {codon_index} outside 0..{count - 1} at position {position}")
        width = self.widths[position]
        if self.scheme is Scheme.DENSE:
            return tuple((codon_index >> (width - 1 - b)) & 1 for b in range(width))
        return tuple(1 if b == codon_index else 0 for b in range(width))

    def to_dict(self):
        """
        JSON friendly view
        """
        return {
            'scheme': self.scheme.value,
            'fragment': {
                'protein_id': self.fragment.protein_id,
                'start': self.fragment.start,
                'residues': self.fragment.sequence,
            },
            'total_qubits': self.total_qubits,
            'positions': [
                {
                    'residue': residue,
                    'width': self.widths[i],
                    'offset': self.offsets[i],
                    'codons': {
                        codon: ''.join(str(b) for b in self.pattern(i, k))
                        for k, codon in enumerate(self.codon_orders[i])
                    },
                }
                for i, residue in enumerate(self.fragment.residues)
            ],
        }


@dataclass(frozen=True)
class GateCountEstimate:
    """
    Gate estimate of the layered rotation + entangler-chain ansatz
    """
    rotations: int
    entanglers: int
    total: int
    layers: int
    qubits: int


@dataclass(frozen=True)
class Decoded:
    """
    Valid decode of a bitstring
    """
    indices: Tuple[int, ...]
    codons: Tuple[str, ...]

    @property
    def valid(self) -> bool:
        """
        Always valid
        """
        return True

    @property
    def mrna(self) -> str:
        """
        Codons joined into an mRNA string
        """
        return ''.join(self.codons)


@dataclass(frozen=True)
class Invalid:
    """
    Bitstring with a redundant pattern at `position`
    """
    position: int

    @property
    def valid(self) -> bool:
        """
        Never valid
        """
        return False


DecodeResult = Union[Decoded, Invalid]


def build_layout(fragment: Fragment, table: CodonTable, scheme: Scheme = Scheme.DENSE) -> EncodingLayout:
    """
    Lay out the qubits of a fragment under an encoding scheme
    """
    scheme = Scheme.parse(scheme)
    widths, offsets, orders = [], [], []
    offset = 0
    for position, residue in enumerate(fragment.residues):
        if residue not in table:
            raise exceptions.UnknownResidue(residue, position)
        codons = table.lookup(residue)
        width = position_width(len(codons), scheme)
        widths.append(width)
        offsets.append(offset)
        orders.append(codons)
        offset += width

    layout = EncodingLayout(scheme=scheme, fragment=fragment, widths=tuple(widths),
                            offsets=tuple(offsets), codon_orders=tuple(orders), total_qubits=offset)
    logger.debug(f'{scheme.value} layout for {fragment.sequence}: {offset} qubits')
    return layout


def qubit_count(fragment: Fragment, table: CodonTable, scheme: Scheme = Scheme.DENSE) -> int:
    """
    Qubits needed to encode a fragment
    """
    scheme = Scheme.parse(scheme)
    total = 0
    for position, residue in enumerate(fragment.residues):
        if residue not in table:
            raise exceptions.UnknownResidue(residue, position)
        total += position_width(table.count(residue), scheme)
    return total


def indicator(position: int, codon_index: int, layout: EncodingLayout) -> PBP:
    """
    Polynomial equal to 1 exactly when the position holds the codon's pattern
    """
    pattern = layout.pattern(position, codon_index)
    return pattern_indicator(position, pattern, layout)


def pattern_indicator(position: int, pattern: Sequence[int], layout: EncodingLayout) -> PBP:
    """
    Indicator of an arbitrary bit pattern of a position
    """
    n = layout.total_qubits
    if len(pattern) != layout.widths[position]:
        raise exceptions.LengthMismatch(
            f"pattern of {len(pattern)} bits for a width {layout.widths[position]} position")
    if layout.scheme is Scheme.ONE_HOT and sum(pattern) == 1:
        return PBP.variable(layout.offsets[position] + list(pattern).index(1), n)

    product = PBP.constant(1.0, n)
    for qubit, bit in zip(layout.qubits(position), pattern):
        factor = PBP.variable(qubit, n) if bit else PBP({(): 1.0, (qubit,): -1.0}, n)
        product = product.multiply(factor)
    return product


def redundant_patterns(position: int, layout: EncodingLayout) -> List[Tuple[int, ...]]:
    """
    Dense patterns with a value of at least the codon count, ascending
    """
    if layout.scheme is not Scheme.DENSE:
        raise exceptions.SchemeMismatch('redundant patterns are defined for dense layouts only')
    width = layout.widths[position]
    count = layout.codon_count(position)
    return [tuple((value >> (width - 1 - b)) & 1 for b in range(width))
            for value in range(count, 1 << width)]


def encode_assignment(indices: Sequence[int], layout: EncodingLayout) -> Tuple[int, ...]:
    """
    Bitstring of a codon assignment
    """
    if len(indices) != len(layout):
        raise exceptions.LengthMismatch(f"{len(indices)} codon indices for {len(layout)} positions")
    bits = []
    for position, codon_index in enumerate(indices):
        bits.extend(layout.pattern(position, codon_index))
    return tuple(bits)


def decode_bits(bits, layout: EncodingLayout, table: CodonTable = None) -> DecodeResult:
    """
    Decode a bitstring into codons or report the first invalid position
    """
    bits = as_bits(bits)
    if len(bits) != layout.total_qubits:
        raise exceptions.LengthMismatch(f"{len(bits)} bits for a {layout.total_qubits} qubit layout")

    indices, codons = [], []
    for position in range(len(layout)):
        offset, width = layout.offsets[position], layout.widths[position]
        chunk = bits[offset:offset + width]
        codon_order = table.lookup(layout.fragment.residues[position]) if table else layout.codon_orders[position]
        if layout.scheme is Scheme.DENSE:
            value = 0
            for bit in chunk:
                value = (value << 1) | bit
        else:
            if sum(chunk) != 1:
                return Invalid(position)
            value = chunk.index(1)
        if value >= len(codon_order):
            return Invalid(position)
        indices.append(value)
        codons.append(codon_order[value])
    return Decoded(indices=tuple(indices), codons=tuple(codons))


def valid_mask(layout: EncodingLayout, basis_indices: np.ndarray) -> np.ndarray:
    """
    Vectorized validity of basis indices (qubit 0 most significant)
    """
    basis_indices = np.asarray(basis_indices, dtype=np.int64)
    n = layout.total_qubits
    mask = np.ones(basis_indices.shape, dtype=bool)
    for position in range(len(layout)):
        width = layout.widths[position]
        if width == 0:
            continue
        shift = n - layout.offsets[position] - width
        chunk = (basis_indices >> shift) & ((1 << width) - 1)
        if layout.scheme is Scheme.DENSE:
            mask &= chunk < layout.codon_count(position)
        else:
            # exactly one bit set
            mask &= (chunk != 0) & ((chunk & (chunk - 1)) == 0)
    return mask


def gate_count(layout: EncodingLayout, layers: int = 2) -> GateCountEstimate:
    """
    Gates of the layered ansatz on the layout's register
    """
    return gate_count_for(layout.total_qubits, layers)


def gate_count_for(qubits: int, layers: int = 2) -> GateCountEstimate:
    """
    Gates of the layered ansatz: n(L+1) rotations and (n-1)L entanglers
    """
    if layers < 1:
        raise exceptions.ValidationError(f"layers must be at least 1, got {layers}")
    if qubits < 1:
        raise exceptions.ZeroQubits('gate estimate needs at least one qubit')
    rotations = qubits * (layers + 1)
    entanglers = (qubits - 1) * layers
    return GateCountEstimate(rotations=rotations, entanglers=entanglers,
                             total=rotations + entanglers, layers=layers, qubits=qubits)
