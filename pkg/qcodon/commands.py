"""
Command handlers behind the CLI subcommands
"""
import dataclasses
import json
import logging
import os
import sys

from . import exceptions
from .bio_io import (builtin_codon_table, load_usage_frequencies, parse_fasta,
                     read_fasta, read_usage_csv, with_stop, ProteinSequence)
from .constants import (DEFAULT_FETCH_ENDPOINT, DEFAULT_FETCH_TIMEOUT,
                        ENV_FETCH_ENDPOINT, ENV_FETCH_TIMEOUT, LOGGER_NAME,
                        RESOURCES_FILE)
from .encoding import Fragment, Scheme, build_layout, gate_count_for, qubit_count
from .exact import exact_optimum
from .files import utility as file_util
from .hamiltonian import (HamiltonianWeights, build_total, load_weights,
                          resolve_weights, rho_from_fraction)
from .net import utility as net_util
from .pipeline import emit_reports, qubit_histogram, resource_report, run_pipeline
from .vqe import VQEConfig, load_config, run_vqe

logger = logging.getLogger(LOGGER_NAME)


def parse_lengths(text: str):
    """
    Parse "6-20" or "6,8,10" into a list of lengths
    """
    lengths = []
    for part in text.split(','):
        part = part.strip()
        if not part:
            continue
        try:
            if '-' in part:
                low, high = (int(v) for v in part.split('-', 1))
                lengths.extend(range(low, high + 1))
            else:
                lengths.append(int(part))
        except ValueError as exc:
            raise exceptions.ValidationError(f"bad length range {part!r}") from exc
    if not lengths:
        raise exceptions.ValidationError('no fragment lengths given')
    return lengths


def table_from_args(args):
    """
    Builtin codon table, optionally with host usage frequencies
    """
    table = builtin_codon_table()
    if args.codon_usage:
        table = load_usage_frequencies(read_usage_csv(args.codon_usage), table)
    return table


def weights_from_args(args) -> HamiltonianWeights:
    """
    Weights from --weights, then --rho-gc-fraction
    """
    weights = load_weights(args.weights) if args.weights else HamiltonianWeights()
    if args.rho_gc_fraction is not None:
        data = weights.to_dict()
        data['rho_gc'] = rho_from_fraction(args.rho_gc_fraction)
        weights = HamiltonianWeights.from_dict(data)
    return weights


def config_from_args(args) -> VQEConfig:
    """
    VQE settings from --vqe-config, overridden by individual flags
    """
    data = load_config(args.vqe_config).to_dict() if args.vqe_config else VQEConfig().to_dict()
    overrides = {
        'layers': args.layers, 'restarts': args.restarts, 'max_evaluations': args.budget,
        'seed': args.seed, 'tau': args.tau, 'scheme': args.scheme,
    }
    data.update({key: value for key, value in overrides.items() if value is not None})
    return VQEConfig.from_dict(data)


def endpoint_from_args(args) -> str:
    """
    Fetch endpoint from --endpoint or the environment
    """
    return args.endpoint or os.getenv(ENV_FETCH_ENDPOINT, DEFAULT_FETCH_ENDPOINT)


def protein_from_args(args) -> ProteinSequence:
    """
    Protein from --sequence, --fasta or --accession
    """
    if args.sequence:
        protein = ProteinSequence.from_string(args.sequence)
    elif args.fasta:
        protein = read_fasta(args.fasta)
    elif args.accession:
        timeout = float(os.getenv(ENV_FETCH_TIMEOUT, DEFAULT_FETCH_TIMEOUT))
        protein = parse_fasta(net_util.fetch_sequence(args.accession, endpoint_from_args(args), timeout))
    else:
        raise exceptions.ValidationError('one of --sequence, --fasta or --accession is required')
    if args.append_stop:
        protein = with_stop(protein)
    logger.info(f'protein {protein.id}: {len(protein)} residues')
    return protein


def emit_json(data, args, name):
    """
    Print JSON to stdout and keep a copy in --out
    """
    json.dump(data, sys.stdout, indent=2)
    sys.stdout.write('\n')
    if args.out:
        file_util.ensure_directory(args.out)
        file_util.write_json(data, os.path.join(args.out, f'{name}.json'))


def encode_main(args):
    """
    Print the qubit layout of a fragment
    """
    table = table_from_args(args)
    fragment = Fragment.from_protein(protein_from_args(args))
    scheme = Scheme.parse(args.scheme or Scheme.DENSE)
    layout = build_layout(fragment, table, scheme)
    data = layout.to_dict()
    data['qubit_counts'] = {s.value: qubit_count(fragment, table, s) for s in Scheme}
    if layout.total_qubits:
        data['gates'] = dataclasses.asdict(gate_count_for(layout.total_qubits, args.layers or 2))
    emit_json(data, args, 'layout')


def resources_main(args):
    """
    Qubit and gate statistics across fragment lengths
    """
    table = table_from_args(args)
    protein = protein_from_args(args)
    frame = resource_report(protein, table, parse_lengths(args.lengths), args.layers or 2,
                            skip_leading_met=not args.keep_met)
    histogram = qubit_histogram(protein, table, args.fragment_length, skip_leading_met=not args.keep_met)
    sys.stdout.write(frame.to_csv(index=False))
    if args.out:
        file_util.ensure_directory(args.out)
        file_util.write_csv(frame, os.path.join(args.out, RESOURCES_FILE))
        file_util.write_csv(histogram, os.path.join(args.out, 'histogram.csv'))


def build_ham_main(args):
    """
    Build the fragment Hamiltonian, --dump adds every term
    """
    table = table_from_args(args)
    fragment = Fragment.from_protein(protein_from_args(args))
    weights = resolve_weights(fragment, table, weights_from_args(args))
    layout = build_layout(fragment, table, Scheme.parse(args.scheme or Scheme.DENSE))
    hamiltonian = build_total(layout, table, weights)
    data = {'scheme': layout.scheme.value, 'num_vars': hamiltonian.num_vars, 'terms': len(hamiltonian.terms),
            'degree': hamiltonian.degree, 'weights': weights.to_dict()}
    if args.dump:
        data['polynomial'] = hamiltonian.to_dict()
    emit_json(data, args, 'hamiltonian')


def exact_main(args):
    """
    Brute-force optimum of a fragment
    """
    table = table_from_args(args)
    fragment = Fragment.from_protein(protein_from_args(args))
    weights = resolve_weights(fragment, table, weights_from_args(args))
    data = exact_optimum(fragment, table, weights).to_dict()
    data['weights'] = weights.to_dict()
    emit_json(data, args, 'exact')


def vqe_main(args):
    """
    Variational optimization of a fragment
    """
    table = table_from_args(args)
    fragment = Fragment.from_protein(protein_from_args(args))
    result = run_vqe(fragment, table, weights_from_args(args), config_from_args(args))
    emit_json(result.to_dict(), args, 'vqe')


def pipeline_main(args):
    """
    Whole-protein fragment pipeline with reports
    """
    table = table_from_args(args)
    protein = protein_from_args(args)
    report = run_pipeline(protein, table, weights_from_args(args), config_from_args(args),
                          length=args.fragment_length, skip_leading_met=not args.keep_met,
                          boundary_fix=args.boundary_fix, workers=args.workers, partial_dir=args.out)
    if args.out:
        sweep = resource_report(protein, table, parse_lengths(args.lengths), args.layers or 2,
                                skip_leading_met=not args.keep_met)
        emit_reports(report, args.out, sweep)
    json.dump({'protein_id': report.protein_id, 'mrna': report.mrna, 'gap_summary': report.gap_summary()},
              sys.stdout, indent=2)
    sys.stdout.write('\n')


def fetch_main(args):
    """
    Download a FASTA record
    """
    if not args.accession:
        raise exceptions.ValidationError('--accession is required')
    timeout = float(os.getenv(ENV_FETCH_TIMEOUT, DEFAULT_FETCH_TIMEOUT))
    text = net_util.fetch_sequence(args.accession, endpoint_from_args(args), timeout)
    parse_fasta(text)
    if args.out:
        file_util.ensure_directory(args.out)
        path = os.path.join(args.out, f'{args.accession}.fasta')
        try:
            with open(path, 'w', encoding='utf-8') as handle:
                handle.write(text)
        except OSError as exc:
            raise exceptions.IoError(f"cannot write {path}: {exc}") from exc
        logger.info(f'{args.accession} written to {path}')
    else:
        sys.stdout.write(text)


COMMANDS = {
    'encode': encode_main,
    'resources': resources_main,
    'build-ham': build_ham_main,
    'exact': exact_main,
    'vqe': vqe_main,
    'pipeline': pipeline_main,
    'fetch': fetch_main,
}
