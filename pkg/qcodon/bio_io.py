"""
Protein and codon-table ingestion plus the nucleotide primitives the
Hamiltonian is built from
"""
import io
import itertools
import logging
import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence, Tuple

import pandas as pd
from Bio.Seq import Seq
from Bio.SeqIO.FastaIO import SimpleFastaParser

from . import exceptions
from .constants import (AMBIGUOUS_RESIDUES, GC_NUCLEOTIDES, GENETIC_CODE,
                        LOGGER_NAME, NUCLEOTIDES, STOP)

logger = logging.getLogger(LOGGER_NAME)

Codon = str
AminoAcid = str


def check_codon(codon: str) -> Codon:
    """
    Validate a codon, three symbols from A/C/G/U
    """
    if len(codon) != 3 or any(n not in NUCLEOTIDES for n in codon):
        raise exceptions.InvalidCodon(f"invalid codon {codon!r}")
    return codon


@dataclass(frozen=True)
class ProteinSequence:
    """
    Validated protein chain
    """
    id: str
    residues: Tuple[AminoAcid, ...]

    def __post_init__(self):
        if len(self.residues) == 0:
            raise exceptions.EmptySequence(f"protein {self.id!r} has no residues")
        for position, letter in enumerate(self.residues):
            if letter not in GENETIC_CODE:
                raise exceptions.UnknownResidue(letter, position)

    def __len__(self):
        return len(self.residues)

    @property
    def sequence(self) -> str:
        """
        Residues as a one-letter string
        """
        return ''.join(self.residues)

    @classmethod
    def from_string(cls, residues: str, id: str = 'sequence'):  # pylint: disable=redefined-builtin
        """
        Build from a one-letter residue string
        """
        return cls(id=id, residues=tuple(residues.strip().upper()))


@dataclass(frozen=True)
class CodonTable:
    """
    Synonymous codon families in canonical (A<C<G<U) order with the
    family-relative usage frequency of every codon
    """
    families: Mapping[AminoAcid, Tuple[Codon, ...]]
    frequencies: Mapping[AminoAcid, Tuple[float, ...]]

    def __contains__(self, amino_acid):
        return amino_acid in self.families

    def lookup(self, amino_acid: AminoAcid) -> Tuple[Codon, ...]:
        """
        Synonymous codons of an amino acid
        """
        try:
            return self.families[amino_acid]
        except KeyError as exc:
            raise exceptions.UnknownResidue(amino_acid, None) from exc

    def family_frequencies(self, amino_acid: AminoAcid) -> Tuple[float, ...]:
        """
        Usage frequencies aligned with lookup(amino_acid)
        """
        self.lookup(amino_acid)
        return self.frequencies[amino_acid]

    def count(self, amino_acid: AminoAcid) -> int:
        """
        Number of synonymous codons
        """
        return len(self.lookup(amino_acid))

    def __reduce__(self):
        return (_freeze, (dict(self.families), dict(self.frequencies)))

    def to_dict(self):
        """
        JSON friendly view
        """
        return {
            amino_acid: dict(zip(codons, self.frequencies[amino_acid]))
            for amino_acid, codons in self.families.items()
        }


def _freeze(families, frequencies) -> CodonTable:
    return CodonTable(
        families=MappingProxyType(dict(families)),
        frequencies=MappingProxyType(dict(frequencies)))


def builtin_codon_table() -> CodonTable:
    """
    Standard codon table with uniform frequencies inside each family
    """
    families = {aa: tuple(sorted(codons)) for aa, codons in GENETIC_CODE.items()}
    frequencies = {aa: tuple(1.0 / len(codons) for _ in codons) for aa, codons in families.items()}
    return _freeze(families, frequencies)


def load_usage_frequencies(rows: Iterable[Tuple[str, float]], base: CodonTable = None) -> CodonTable:
    """
    Apply host usage frequencies to a codon table

    :rows : (codon, frequency) pairs, any scale
    :base : table providing the families, builtin table when omitted

    Frequencies are renormalized within each synonymous family. Codons of a
    family that appears in rows but are themselves absent get frequency 0.
    Families with no codon in rows keep the frequencies of the base table.
    """
    base = base or builtin_codon_table()
    known = {codon for codons in base.families.values() for codon in codons}

    values = {}
    for codon, frequency in rows:
        codon = codon.strip().upper().replace('T', 'U')
        check_codon(codon)
        if codon not in known:
            raise exceptions.UnknownCodon(f"codon {codon!r} is not in the codon table")
        frequency = float(frequency)
        if not math.isfinite(frequency):
            raise exceptions.ValidationError(f"frequency of {codon} is not finite")
        if frequency < 0:
            raise exceptions.NegativeFrequency(f"frequency of {codon} is negative: {frequency}")
        values[codon] = values.get(codon, 0.0) + frequency

    frequencies = {}
    for amino_acid, codons in base.families.items():
        if not any(codon in values for codon in codons):
            frequencies[amino_acid] = base.frequencies[amino_acid]
            continue
        raw = [values.get(codon, 0.0) for codon in codons]
        total = math.fsum(raw)
        if total <= 0:
            raise exceptions.AllZeroFamily(amino_acid)
        frequencies[amino_acid] = tuple(v / total for v in raw)

    logger.info(f'usage frequencies loaded for {len(values)} codons')
    return _freeze(base.families, frequencies)


def read_usage_csv(path) -> list:
    """
    Read a `codon,frequency` CSV, `#` comments and an optional header allowed
    """
    try:
        frame = pd.read_csv(path, comment='#', header=None, names=['codon', 'frequency'],
                            dtype=str, skipinitialspace=True, skip_blank_lines=True)
    except OSError as exc:
        raise exceptions.IoError(f"cannot read codon usage file {path}: {exc}") from exc

    frame = frame.dropna(how='all')
    if len(frame) and str(frame.iloc[0]['codon']).strip().lower() == 'codon':
        frame = frame.iloc[1:]

    rows = []
    for codon, frequency in frame.itertuples(index=False):
        try:
            rows.append((str(codon).strip().upper().replace('T', 'U'), float(frequency)))
        except (TypeError, ValueError) as exc:
            raise exceptions.ValidationError(f"bad frequency for codon {codon!r}: {frequency!r}") from exc
    logger.debug(f'read {len(rows)} usage rows from {path}')
    return rows


def parse_fasta(text: str) -> ProteinSequence:
    """
    Parse a single FASTA record into a protein sequence
    """
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines or not lines[0].startswith('>'):
        raise exceptions.MalformedHeader('FASTA text must start with a ">" header line')
    if not lines[0][1:].split():
        raise exceptions.MalformedHeader('FASTA header has no identifier')

    records = list(SimpleFastaParser(io.StringIO(text.lstrip())))
    if len(records) > 1:
        logger.warning(f'{len(records)} FASTA records found, only the first one is used')
    title, residues = records[0]
    residues = residues.strip().upper()
    if not residues:
        raise exceptions.EmptySequence(f"record {title!r} has no residues")

    return ProteinSequence(id=title.split()[0], residues=tuple(residues))


def read_fasta(path) -> ProteinSequence:
    """
    Parse a FASTA file
    """
    try:
        with open(path, encoding='utf-8') as handle:
            text = handle.read()
    except OSError as exc:
        raise exceptions.IoError(f"cannot read FASTA file {path}: {exc}") from exc
    return parse_fasta(text)


def with_stop(protein: ProteinSequence) -> ProteinSequence:
    """
    Append the Stop pseudo-residue
    """
    return ProteinSequence(id=protein.id, residues=protein.residues + (STOP,))


def gc_count(codon: Codon) -> int:
    """
    Number of G and C nucleotides in a codon
    """
    return sum(1 for n in check_codon(codon) if n in GC_NUCLEOTIDES)


def repeat_score(a: Codon, b: Codon) -> int:
    """
    Repeated nucleotide score of two consecutive codons: longest run of one
    nucleotide in the 6-mer minus 2, zero below a run of 3
    """
    longest = max(len(list(run)) for _, run in itertools.groupby(check_codon(a) + check_codon(b)))
    return longest - 2 if longest >= 3 else 0


def translate(mrna: str) -> str:
    """
    Translate an mRNA string with the standard genetic code
    """
    return str(Seq(mrna).translate())


def encodes(mrna: str, residues: Sequence[AminoAcid]) -> bool:
    """
    Check that an mRNA translates back to the residues, ambiguity codes
    accepting any of their members
    """
    translated = translate(mrna)
    if len(translated) != len(residues):
        return False
    for expected, actual in zip(residues, translated):
        members = AMBIGUOUS_RESIDUES.get(expected, frozenset(expected))
        if actual not in members:
            return False
    return True
