"""
Fragment a protein, optimize every fragment with the exact oracle and the
VQE, stitch the mRNA and write the reports
"""
import concurrent.futures
import dataclasses
import logging
import os
import time
from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

import numpy as np
import pandas as pd

from . import exceptions
from .bio_io import CodonTable, ProteinSequence, encodes
from .constants import (DEFAULT_FRAGMENT_LENGTH, DEFAULT_LAYERS,
                        ENERGY_TOLERANCE, LOGGER_NAME, MAX_RESOURCE_LENGTH,
                        MET, MRNA_FILE, PARTIAL_FILE, RESOURCES_FILE,
                        SCATTER_FILE, START_CODON, SUMMARY_FILE)
from .encoding import Fragment, Scheme, gate_count_for, qubit_count
from .exact import exact_optimum
from .files import utility as file_util
from .hamiltonian import HamiltonianWeights, resolve_weights
from .vqe import VQEConfig, run_vqe

logger = logging.getLogger(LOGGER_NAME)

SCATTER_COLUMNS = ['fragment_index', 'exact_energy', 'vqe_energy']
RESOURCE_COLUMNS = ['length', 'scheme', 'fragments', 'min_qubits', 'mean_qubits', 'max_qubits',
                    'min_gates', 'mean_gates', 'max_gates']
HISTOGRAM_COLUMNS = ['length', 'scheme', 'qubits', 'fragments']


@dataclass(frozen=True)
class FragmentPlan:
    """
    Contiguous fragments covering the (possibly Met-trimmed) protein
    """
    protein: ProteinSequence
    fragments: Tuple[Fragment, ...]
    fragment_length: int
    skip_leading_met: bool
    met_trimmed: bool

    def __len__(self):
        return len(self.fragments)

    def residues(self) -> Tuple[str, ...]:
        """
        Residues of all fragments plus the trimmed Met
        """
        joined = tuple(r for fragment in self.fragments for r in fragment.residues)
        return ((MET,) if self.met_trimmed else ()) + joined


@dataclass(frozen=True)
class FragmentResult:
    """
    Per-fragment row of the pipeline report
    """
    index: int
    start: int
    residues: str
    dense_qubits: int
    onehot_qubits: int
    dense_gates: int
    onehot_gates: int
    exact_energy: float
    vqe_energy: Optional[float]
    gap: Optional[float]
    fallback: bool
    substituted: bool
    codons: Tuple[str, ...]
    exact_codons: Tuple[str, ...]
    c_p: float
    evaluations: int
    wall_time: float

    def to_dict(self):
        """
        JSON friendly view
        """
        data = dataclasses.asdict(self)
        data['codons'] = list(self.codons)
        data['exact_codons'] = list(self.exact_codons)
        return data


@dataclass(frozen=True)
class PipelineReport:
    """
    Per-fragment results plus the stitched mRNA
    """
    protein_id: str
    fragment_length: int
    met_trimmed: bool
    rows: Tuple[FragmentResult, ...]
    mrna: str
    weights: HamiltonianWeights
    config: VQEConfig
    boundary_fix: bool = False
    layers: int = DEFAULT_LAYERS

    def gaps(self) -> List[float]:
        """
        Relative gaps of fragments with a VQE answer
        """
        return [row.gap for row in self.rows if row.gap is not None]

    def gap_summary(self):
        """
        Distribution of relative gaps
        """
        gaps = self.gaps()
        if not gaps:
            return {'count': 0, 'exact_matches': 0, 'mean': None, 'max': None, 'quantiles': {}}
        values = np.asarray(gaps)
        return {
            'count': len(gaps),
            'exact_matches': int(np.sum(values == 0)),
            'mean': float(values.mean()),
            'max': float(values.max()),
            'quantiles': {str(q): float(np.quantile(values, q)) for q in (0.5, 0.9, 0.99)},
        }

    def to_dict(self):
        """
        JSON friendly view
        """
        return {
            'protein_id': self.protein_id,
            'fragment_length': self.fragment_length,
            'met_trimmed': self.met_trimmed,
            'boundary_fix': self.boundary_fix,
            'mrna': self.mrna,
            'gap_summary': self.gap_summary(),
            'weights': self.weights.to_dict(),
            'config': self.config.to_dict(),
            'fragments': [row.to_dict() for row in self.rows],
        }


def fragment_protein(seq: ProteinSequence, length: int = DEFAULT_FRAGMENT_LENGTH,
                     skip_leading_met: bool = True) -> FragmentPlan:
    """
    Split into contiguous chunks of `length`, the last one may be shorter
    """
    if length < 1:
        raise exceptions.ValidationError(f"fragment length must be at least 1, got {length}")
    residues = seq.residues
    trimmed = skip_leading_met and residues[0] == MET
    offset = 1 if trimmed else 0
    if len(residues) - offset == 0:
        raise exceptions.EmptyAfterTrim(f"{seq.id} has nothing left after removing the leading Met")

    fragments = tuple(
        Fragment(residues=residues[start:start + length], protein_id=seq.id, start=start)
        for start in range(offset, len(residues), length))
    logger.info(f'{seq.id}: {len(fragments)} fragments of length {length}'
                f'{" after trimming Met" if trimmed else ""}')
    return FragmentPlan(protein=seq, fragments=fragments, fragment_length=length,
                        skip_leading_met=skip_leading_met, met_trimmed=trimmed)


def _gates(qubits: int, layers: int) -> int:
    return gate_count_for(qubits, layers).total if qubits else 0


def resource_report(seq: ProteinSequence, table: CodonTable, lengths: Iterable[int] = range(6, 21),
                    layers: int = DEFAULT_LAYERS, skip_leading_met: bool = True) -> pd.DataFrame:
    """
    Qubit and gate statistics per fragment length and scheme
    """
    rows = []
    for length in lengths:
        if not 1 <= length <= MAX_RESOURCE_LENGTH:
            raise exceptions.ValidationError(f"fragment length {length} outside 1..{MAX_RESOURCE_LENGTH}")
        plan = fragment_protein(seq, length, skip_leading_met)
        for scheme in (Scheme.DENSE, Scheme.ONE_HOT):
            qubits = np.array([qubit_count(f, table, scheme) for f in plan.fragments])
            gates = np.array([_gates(int(q), layers) for q in qubits])
            rows.append({
                'length': length, 'scheme': scheme.value, 'fragments': len(qubits),
                'min_qubits': int(qubits.min()), 'mean_qubits': float(qubits.mean()),
                'max_qubits': int(qubits.max()),
                'min_gates': int(gates.min()), 'mean_gates': float(gates.mean()),
                'max_gates': int(gates.max()),
            })
    return pd.DataFrame(rows, columns=RESOURCE_COLUMNS)


def qubit_histogram(seq: ProteinSequence, table: CodonTable, length: int = DEFAULT_FRAGMENT_LENGTH,
                    skip_leading_met: bool = True) -> pd.DataFrame:
    """
    Number of fragments per qubit count for each scheme
    """
    plan = fragment_protein(seq, length, skip_leading_met)
    frames = []
    for scheme in (Scheme.DENSE, Scheme.ONE_HOT):
        counts = pd.Series([qubit_count(f, table, scheme) for f in plan.fragments]).value_counts().sort_index()
        frames.append(pd.DataFrame({'length': length, 'scheme': scheme.value,
                                    'qubits': counts.index.astype(int), 'fragments': counts.values}))
    return pd.concat(frames, ignore_index=True)[HISTOGRAM_COLUMNS]


def relative_gap(vqe_energy: float, exact_energy: float) -> float:
    """
    (vqe - exact) / |exact|, zero within the energy tolerance
    """
    difference = vqe_energy - exact_energy
    if difference <= ENERGY_TOLERANCE:
        return 0.0
    return difference / max(abs(exact_energy), ENERGY_TOLERANCE)


def fragment_seed(seed: int, index: int) -> int:
    """
    Per-fragment seed derived from the master seed
    """
    return int(np.random.SeedSequence([seed, index]).generate_state(1)[0])


def optimize_fragment(index: int, fragment: Fragment, table: CodonTable, weights: HamiltonianWeights,
                      config: VQEConfig, previous_codon: str = None, layers: int = None) -> FragmentResult:
    """
    Exact oracle and VQE on one fragment
    """
    started = time.perf_counter()
    layers = layers or config.layers
    weights = resolve_weights(fragment, table, weights, previous_codon)
    exact = exact_optimum(fragment, table, weights, previous_codon)
    vqe_config = dataclasses.replace(config, seed=fragment_seed(config.seed, index))
    result = run_vqe(fragment, table, weights, vqe_config, previous_codon)

    if result.best_valid is None:
        logger.warning(f'fragment {index} ({fragment.sequence}): no valid VQE state, exact assignment substituted')
        codons, vqe_energy, gap, substituted = exact.codons, None, None, True
    else:
        vqe_energy = result.best_valid.energy
        if vqe_energy < exact.best_energy - ENERGY_TOLERANCE:
            raise exceptions.OracleViolation(
                f"fragment {index}: VQE energy {vqe_energy} below exact optimum {exact.best_energy}")
        codons = result.best_valid.codons
        gap, substituted = relative_gap(vqe_energy, exact.best_energy), False

    dense = qubit_count(fragment, table, Scheme.DENSE)
    onehot = qubit_count(fragment, table, Scheme.ONE_HOT)
    row = FragmentResult(
        index=index, start=fragment.start, residues=fragment.sequence,
        dense_qubits=dense, onehot_qubits=onehot,
        dense_gates=_gates(dense, layers), onehot_gates=_gates(onehot, layers),
        exact_energy=exact.best_energy, vqe_energy=vqe_energy, gap=gap,
        fallback=result.fallback, substituted=substituted,
        codons=tuple(codons), exact_codons=exact.codons, c_p=weights.c_p,
        evaluations=result.evaluations, wall_time=time.perf_counter() - started)
    logger.info(f'fragment {index} ({fragment.sequence}): exact {row.exact_energy:.6f}, '
                f'vqe {vqe_energy if vqe_energy is None else round(vqe_energy, 6)}, gap {gap}')
    return row


def _optimize_task(arguments):
    return optimize_fragment(*arguments)


def run_pipeline(seq: ProteinSequence, table: CodonTable, weights: HamiltonianWeights = None,
                 vqe_config: VQEConfig = None, length: int = DEFAULT_FRAGMENT_LENGTH,
                 skip_leading_met: bool = True, boundary_fix: bool = False, workers: int = 1,
                 partial_dir=None) -> PipelineReport:
    """
    Optimize every fragment and stitch the mRNA

    :boundary_fix : condition each fragment's first repeat term on the
                    previous fragment's last codon, fragments then run in order
    :partial_dir : directory receiving one JSON line per finished fragment
    """
    weights = weights or HamiltonianWeights()
    vqe_config = vqe_config or VQEConfig()
    plan = fragment_protein(seq, length, skip_leading_met)
    partial_path = None
    if partial_dir is not None:
        file_util.ensure_directory(partial_dir)
        partial_path = os.path.join(partial_dir, PARTIAL_FILE)
        if os.path.exists(partial_path):
            os.remove(partial_path)

    def keep(row):
        if partial_path is not None:
            file_util.append_json_line(row.to_dict(), partial_path)
        return row

    rows: List[FragmentResult] = []
    if boundary_fix or workers <= 1:
        previous = START_CODON if plan.met_trimmed else None
        for index, fragment in enumerate(plan.fragments):
            row = optimize_fragment(index, fragment, table, weights, vqe_config,
                                    previous if boundary_fix else None)
            rows.append(keep(row))
            previous = row.codons[-1]
    else:
        tasks = [(index, fragment, table, weights, vqe_config) for index, fragment in enumerate(plan.fragments)]
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            for row in pool.map(_optimize_task, tasks):
                rows.append(keep(row))

    mrna = (START_CODON if plan.met_trimmed else '') + ''.join(c for row in rows for c in row.codons)
    if not encodes(mrna, plan.residues()):
        raise exceptions.OracleViolation(f"stitched mRNA does not translate back to {seq.id}")

    report = PipelineReport(protein_id=seq.id, fragment_length=length, met_trimmed=plan.met_trimmed,
                            rows=tuple(rows), mrna=mrna, weights=weights, config=vqe_config,
                            boundary_fix=boundary_fix, layers=vqe_config.layers)
    summary = report.gap_summary()
    logger.info(f'pipeline {seq.id}: {len(rows)} fragments, {summary["exact_matches"]} exact matches, '
                f'mRNA of {len(mrna)} nt')
    return report


def scatter_frame(report: PipelineReport) -> pd.DataFrame:
    """
    Exact against VQE energy per fragment
    """
    return pd.DataFrame([{'fragment_index': row.index, 'exact_energy': row.exact_energy,
                          'vqe_energy': row.vqe_energy} for row in report.rows], columns=SCATTER_COLUMNS)


def report_resources(report: PipelineReport) -> pd.DataFrame:
    """
    Qubit and gate statistics of the fragments actually run
    """
    if not report.rows:
        return pd.DataFrame(columns=RESOURCE_COLUMNS)
    rows = []
    for scheme, qubit_field, gate_field in ((Scheme.DENSE, 'dense_qubits', 'dense_gates'),
                                            (Scheme.ONE_HOT, 'onehot_qubits', 'onehot_gates')):
        qubits = np.array([getattr(row, qubit_field) for row in report.rows])
        gates = np.array([getattr(row, gate_field) for row in report.rows])
        rows.append({
            'length': report.fragment_length, 'scheme': scheme.value, 'fragments': len(qubits),
            'min_qubits': int(qubits.min()), 'mean_qubits': float(qubits.mean()), 'max_qubits': int(qubits.max()),
            'min_gates': int(gates.min()), 'mean_gates': float(gates.mean()), 'max_gates': int(gates.max()),
        })
    return pd.DataFrame(rows, columns=RESOURCE_COLUMNS)


def emit_reports(report: PipelineReport, directory, resources: pd.DataFrame = None) -> List[str]:
    """
    Write summary.json, scatter.csv, resources.csv and mrna.fasta
    """
    file_util.ensure_directory(directory)
    resources = report_resources(report) if resources is None else resources
    paths = [
        file_util.write_json(report.to_dict(), os.path.join(directory, SUMMARY_FILE)),
        file_util.write_csv(scatter_frame(report), os.path.join(directory, SCATTER_FILE)),
        file_util.write_csv(resources, os.path.join(directory, RESOURCES_FILE)),
        file_util.write_fasta(report.mrna, report.protein_id or 'mrna',
                              f'codon-optimized mRNA, {len(report.rows)} fragments',
                              os.path.join(directory, MRNA_FILE)),
    ]
    logger.info(f'reports written to {directory}')
    return paths
