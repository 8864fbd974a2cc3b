"""
Brute-force ground truth: best valid codon assignment and best bitstring
"""
import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from . import exceptions
from .bio_io import CodonTable, gc_count, repeat_score
from .constants import (EXACT_CHUNK_SIZE, LOGGER_NAME, MAX_EXACT_SEARCH_SPACE,
                        MAX_EXHAUSTIVE_VARIABLES)
from .encoding import Fragment
from .hamiltonian import (CodonAssignment, HamiltonianWeights,
                          assignment_codons, direct_energy)
from .pbp import PBP, index_to_bits

logger = logging.getLogger(LOGGER_NAME)


@dataclass(frozen=True)
class ExactResult:
    """
    Optimum over every valid codon assignment
    """
    best_assignment: CodonAssignment
    best_energy: float
    search_space_size: int
    codons: Tuple[str, ...]

    @property
    def mrna(self) -> str:
        """
        Codons joined into an mRNA string
        """
        return ''.join(self.codons)

    def to_dict(self):
        """
        JSON friendly view
        """
        return {
            'assignment': list(self.best_assignment),
            'codons': list(self.codons),
            'mrna': self.mrna,
            'energy': self.best_energy,
            'space': self.search_space_size,
        }


def search_space_size(fragment: Fragment, table: CodonTable) -> int:
    """
    Number of valid assignments, the product of family sizes
    """
    return math.prod(table.count(residue) for residue in fragment.residues)


def _energy_tables(fragment: Fragment, table: CodonTable, weights: HamiltonianWeights, previous_codon):
    """
    Per-position usage energies, GC counts and per-pair repeat energies
    """
    families = [table.lookup(residue) for residue in fragment.residues]
    usage = [np.array([-weights.c_f * math.log(f + weights.eps_f) for f in table.family_frequencies(residue)])
             for residue in fragment.residues]
    gc = [np.array([gc_count(codon) for codon in codons], dtype=np.int64) for codons in families]
    pairs = [np.array([[weights.c_r * repeat_score(a, b) for b in right] for a in left])
             for left, right in zip(families, families[1:])]
    if previous_codon is not None:
        usage[0] = usage[0] + np.array([weights.c_r * repeat_score(previous_codon, b) for b in families[0]])
    return usage, gc, pairs


def exact_optimum(fragment: Fragment, table: CodonTable, weights: HamiltonianWeights,
                  previous_codon: str = None) -> ExactResult:
    """
    Enumerate every valid assignment in mixed-radix order, lowest energy wins,
    ties go to the lexicographically smallest assignment
    """
    size = search_space_size(fragment, table)
    if size > MAX_EXACT_SEARCH_SPACE:
        raise exceptions.SearchSpaceTooLarge(size, MAX_EXACT_SEARCH_SPACE)

    radices = tuple(table.count(residue) for residue in fragment.residues)
    usage, gc, pairs = _energy_tables(fragment, table, weights, previous_codon)
    target = len(fragment) * weights.rho_gc

    best_index, best_value = None, math.inf
    for start in range(0, size, EXACT_CHUNK_SIZE):
        stop = min(start + EXACT_CHUNK_SIZE, size)
        digits = np.unravel_index(np.arange(start, stop, dtype=np.int64), radices)
        energy = np.zeros(stop - start)
        gc_total = np.zeros(stop - start)
        for position, digit in enumerate(digits):
            energy += usage[position][digit]
            gc_total += gc[position][digit]
        energy += weights.c_gc * (gc_total - target) ** 2
        for position, pair in enumerate(pairs):
            energy += pair[digits[position], digits[position + 1]]

        local = int(np.argmin(energy))
        if energy[local] < best_value:
            best_index, best_value = start + local, float(energy[local])
        logger.debug(f'enumerated {stop}/{size} assignments of {fragment.sequence}')

    assignment = tuple(int(d) for d in np.unravel_index(best_index, radices))
    energy = direct_energy(assignment, fragment, table, weights, previous_codon)
    logger.debug(f'exact optimum of {fragment.sequence}: {assignment} energy {energy:.6f}')
    return ExactResult(best_assignment=assignment, best_energy=energy, search_space_size=size,
                       codons=assignment_codons(assignment, fragment, table))


def exhaustive_bitstring_min(hamiltonian: PBP, n: int = None) -> Tuple[Tuple[int, ...], float]:
    """
    Lowest-energy bitstring over all 2^n basis states, ties to the smallest index
    """
    n = hamiltonian.num_vars if n is None else int(n)
    if n > MAX_EXHAUSTIVE_VARIABLES:
        raise exceptions.TooManyVariables(n, MAX_EXHAUSTIVE_VARIABLES)
    diagonal = hamiltonian.to_diagonal(n)
    index = int(np.argmin(diagonal))
    return index_to_bits(index, n), float(diagonal[index])
