"""
Codon optimization Hamiltonian H = H_f + H_gc + H_r + H_p over an encoding
layout, and the polynomial-free energy of a codon assignment
"""
import dataclasses
import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from . import exceptions
from .bio_io import CodonTable, check_codon, gc_count, repeat_score
from .constants import (DEFAULT_C_F, DEFAULT_C_GC, DEFAULT_C_R, DEFAULT_EPS_F,
                        DEFAULT_RHO_GC, LOGGER_NAME, MAX_GC_PER_CODON,
                        MAX_REPEAT_SCORE)
from .encoding import (EncodingLayout, Fragment, Scheme, indicator,
                       pattern_indicator, redundant_patterns)
from .files import utility as file_util
from .pbp import PBP

logger = logging.getLogger(LOGGER_NAME)

CodonAssignment = Tuple[int, ...]

WEIGHT_KEYS = ('c_f', 'c_gc', 'c_r', 'c_p', 'eps_f', 'rho_gc')


@dataclass(frozen=True)
class HamiltonianWeights:
    """
    Tunable weights, c_p None means "auto" (dominance bound)
    """
    c_f: float = DEFAULT_C_F
    c_gc: float = DEFAULT_C_GC
    c_r: float = DEFAULT_C_R
    c_p: Optional[float] = None
    eps_f: float = DEFAULT_EPS_F
    rho_gc: float = DEFAULT_RHO_GC

    def __post_init__(self):
        for name in ('c_f', 'c_gc', 'c_r', 'c_p', 'eps_f', 'rho_gc'):
            value = getattr(self, name)
            if value is None and name == 'c_p':
                continue
            if not isinstance(value, (int, float)) or not math.isfinite(value):
                raise exceptions.InvalidWeights(f"{name} must be a finite number, got {value!r}")
            if value < 0:
                raise exceptions.InvalidWeights(f"{name} must be non-negative, got {value}")
        if self.eps_f <= 0:
            raise exceptions.InvalidWeights(f"eps_f must be positive, got {self.eps_f}")
        if not 0 <= self.rho_gc <= MAX_GC_PER_CODON:
            raise exceptions.InvalidWeights(f"rho_gc must lie in [0, 3], got {self.rho_gc}")

    @classmethod
    def zero(cls):
        """
        Every weight zero, the Hamiltonian vanishes
        """
        return cls(c_f=0.0, c_gc=0.0, c_r=0.0, c_p=0.0)

    @classmethod
    def from_dict(cls, data: dict):
        """
        Build from a weight configuration mapping

        :c_p : number or "auto"
        :rho_gc : GC count per codon in [0, 3] or {"fraction": f} meaning 3f
        """
        unknown = set(data) - set(WEIGHT_KEYS)
        if unknown:
            raise exceptions.InvalidWeights(f"unknown weight keys: {sorted(unknown)}")
        values = dict(data)
        if isinstance(values.get('c_p'), str):
            if values['c_p'].lower() != 'auto':
                raise exceptions.InvalidWeights(f"c_p must be a number or 'auto', got {values['c_p']!r}")
            values['c_p'] = None
        rho = values.get('rho_gc')
        if isinstance(rho, dict):
            if set(rho) != {'fraction'}:
                raise exceptions.InvalidWeights('rho_gc object must be {"fraction": f}')
            values['rho_gc'] = rho_from_fraction(rho['fraction'])
        return cls(**values)

    def with_penalty(self, c_p: float):
        """
        Copy with a resolved penalty weight
        """
        return dataclasses.replace(self, c_p=float(c_p))

    def to_dict(self):
        """
        JSON friendly view, unresolved penalty written as "auto"
        """
        data = dataclasses.asdict(self)
        if data['c_p'] is None:
            data['c_p'] = 'auto'
        return data


def rho_from_fraction(fraction: float) -> float:
    """
    Map a GC fraction in [0, 1] to a GC count per codon
    """
    if not isinstance(fraction, (int, float)) or not 0 <= fraction <= 1:
        raise exceptions.InvalidWeights(f"GC fraction must lie in [0, 1], got {fraction!r}")
    return MAX_GC_PER_CODON * float(fraction)


def load_weights(path) -> HamiltonianWeights:
    """
    Read weights from a JSON file
    """
    data = file_util.read_json(path)
    if not isinstance(data, dict):
        raise exceptions.InvalidWeights(f"weight file {path} must hold a JSON object")
    weights = HamiltonianWeights.from_dict(data)
    logger.info(f'weights loaded from {path}: {weights.to_dict()}')
    return weights


def _codons(layout: EncodingLayout, table: CodonTable, position: int):
    residue = layout.fragment.residues[position]
    return table.lookup(residue), table.family_frequencies(residue)


def build_hf(layout: EncodingLayout, table: CodonTable, weights: HamiltonianWeights) -> PBP:
    """
    Codon usage term, -c_f sum_i sum_j log(c_ij + eps_f) Q_ij
    """
    n = layout.total_qubits
    hf = PBP.zero(n)
    if weights.c_f == 0:
        return hf
    for position in range(len(layout)):
        _, frequencies = _codons(layout, table, position)
        for codon_index, frequency in enumerate(frequencies):
            coefficient = -weights.c_f * math.log(frequency + weights.eps_f)
            hf = hf.add(indicator(position, codon_index, layout).scale(coefficient))
    return hf


def build_hgc(layout: EncodingLayout, table: CodonTable, weights: HamiltonianWeights) -> PBP:
    """
    GC term, c_gc (sum_i sum_j s_ij Q_ij - N rho_gc)^2
    """
    n = layout.total_qubits
    if weights.c_gc == 0:
        return PBP.zero(n)
    linear = PBP.constant(-len(layout) * weights.rho_gc, n)
    for position in range(len(layout)):
        codons, _ = _codons(layout, table, position)
        for codon_index, codon in enumerate(codons):
            s = gc_count(codon)
            if s:
                linear = linear.add(indicator(position, codon_index, layout).scale(s))
    return linear.multiply(linear).scale(weights.c_gc)


def build_hr(layout: EncodingLayout, table: CodonTable, weights: HamiltonianWeights,
             previous_codon: str = None) -> PBP:
    """
    Repeat term, c_r sum_i sum_jk r(codon_ij, codon_(i+1)k) Q_ij Q_(i+1)k

    :previous_codon : last codon chosen for the preceding fragment, adds the
                      seam term conditioned on it
    """
    n = layout.total_qubits
    hr = PBP.zero(n)
    if weights.c_r == 0:
        return hr

    if previous_codon is not None:
        check_codon(previous_codon)
        codons, _ = _codons(layout, table, 0)
        for codon_index, codon in enumerate(codons):
            score = repeat_score(previous_codon, codon)
            if score:
                hr = hr.add(indicator(0, codon_index, layout).scale(weights.c_r * score))

    for position in range(len(layout) - 1):
        left, _ = _codons(layout, table, position)
        right, _ = _codons(layout, table, position + 1)
        right_indicators = [indicator(position + 1, k, layout) for k in range(len(right))]
        for j, codon_j in enumerate(left):
            left_indicator = None
            for k, codon_k in enumerate(right):
                score = repeat_score(codon_j, codon_k)
                if not score:
                    continue
                if left_indicator is None:
                    left_indicator = indicator(position, j, layout)
                hr = hr.add(left_indicator.multiply(right_indicators[k]).scale(weights.c_r * score))
    return hr


def build_hp(layout: EncodingLayout, weights: HamiltonianWeights) -> PBP:
    """
    Redundant-encoding penalty

    Dense: c_p times the indicator of every redundant pattern.
    One-hot: c_p (sum_j q_ij - 1)^2 per position, exactly one codon chosen.
    """
    if weights.c_p is None:
        raise exceptions.InvalidWeights('c_p is unresolved, call resolve_weights first')
    n = layout.total_qubits
    hp = PBP.zero(n)
    if weights.c_p == 0:
        return hp

    for position in range(len(layout)):
        if layout.scheme is Scheme.DENSE:
            for pattern in redundant_patterns(position, layout):
                hp = hp.add(pattern_indicator(position, pattern, layout))
        else:
            excess = PBP({(qubit,): 1.0 for qubit in layout.qubits(position)}, n).add(PBP.constant(-1.0, n))
            hp = hp.add(excess.multiply(excess))
    return hp.scale(weights.c_p)


def resolve_weights(fragment: Fragment, table: CodonTable, weights: HamiltonianWeights,
                    previous_codon: str = None) -> HamiltonianWeights:
    """
    Replace an "auto" penalty with the dominance bound
    """
    if weights.c_p is not None:
        return weights
    return weights.with_penalty(dominance_bound(fragment, table, weights, previous_codon))


def build_total(layout: EncodingLayout, table: CodonTable, weights: HamiltonianWeights,
                previous_codon: str = None) -> PBP:
    """
    Full Hamiltonian H_f + H_gc + H_r + H_p
    """
    weights = resolve_weights(layout.fragment, table, weights, previous_codon)
    total = (build_hf(layout, table, weights)
             .add(build_hgc(layout, table, weights))
             .add(build_hr(layout, table, weights, previous_codon))
             .add(build_hp(layout, weights)))
    logger.debug(f'Hamiltonian for {layout.fragment.sequence}: {len(total.terms)} terms, '
                 f'degree {total.degree}, c_p {weights.c_p:g}')
    return PBP(total.terms, layout.total_qubits)


def check_assignment(assignment: Sequence[int], fragment: Fragment, table: CodonTable) -> CodonAssignment:
    """
    Validate codon indices against the fragment's families
    """
    if len(assignment) != len(fragment):
        raise exceptions.LengthMismatch(f"{len(assignment)} codon indices for {len(fragment)} positions")
    for position, (residue, codon_index) in enumerate(zip(fragment.residues, assignment)):
        count = table.count(residue)
        if not 0 <= codon_index < count:
            raise exceptions.IndexOutOfRange(
                f"codon index {codon_index} outside 0..{count - 1} at position {position}")
    return tuple(int(i) for i in assignment)


def assignment_codons(assignment: Sequence[int], fragment: Fragment, table: CodonTable) -> Tuple[str, ...]:
    """
    Codons selected by an assignment
    """
    assignment = check_assignment(assignment, fragment, table)
    return tuple(table.lookup(residue)[i] for residue, i in zip(fragment.residues, assignment))


def direct_energy(assignment: Sequence[int], fragment: Fragment, table: CodonTable,
                  weights: HamiltonianWeights, previous_codon: str = None) -> float:
    """
    Energy of a valid codon assignment computed straight from the codons
    """
    codons = assignment_codons(assignment, fragment, table)
    frequencies = [table.family_frequencies(residue)[i] for residue, i in zip(fragment.residues, assignment)]

    usage = -weights.c_f * sum(math.log(f + weights.eps_f) for f in frequencies)
    gc = weights.c_gc * (sum(gc_count(c) for c in codons) - len(codons) * weights.rho_gc) ** 2
    chain = ([previous_codon] if previous_codon is not None else []) + list(codons)
    repeats = weights.c_r * sum(repeat_score(a, b) for a, b in zip(chain, chain[1:]))
    return usage + gc + repeats


def dominance_bound(fragment: Fragment, table: CodonTable, weights: HamiltonianWeights,
                    previous_codon: str = None) -> float:
    """
    Penalty weight above which no redundant state can undercut a valid one
    """
    n = len(fragment)
    usage = sum(abs(math.log(weights.eps_f)) + table.count(residue) * math.log1p(weights.eps_f)
                for residue in fragment.residues)
    target = n * weights.rho_gc
    gc = max((MAX_GC_PER_CODON * n - target) ** 2, target ** 2)
    pairs = n - 1 + (1 if previous_codon is not None else 0)
    return 1.0 + weights.c_f * usage + weights.c_gc * gc + weights.c_r * MAX_REPEAT_SCORE * pairs
