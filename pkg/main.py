#!/usr/bin/env python3
import argparse
import os
import sys
import log
from qcodon import exceptions
from qcodon.commands import COMMANDS
from qcodon.constants import DEFAULT_FRAGMENT_LENGTH, ENV_WORKERS, LOGGER_NAME


def build_parser():
    """
    Command line parser, global flags are accepted after every subcommand
    """
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--codon-usage', help='codon,frequency CSV of the host organism')
    common.add_argument('--weights', help='Hamiltonian weight JSON')
    common.add_argument('--vqe-config', help='VQE configuration JSON')
    common.add_argument('--scheme', choices=['dense', 'onehot'])
    common.add_argument('--fragment-length', type=int, default=DEFAULT_FRAGMENT_LENGTH)
    common.add_argument('--seed', type=int)
    common.add_argument('--out', help='output directory')
    common.add_argument('--sequence', help='protein residues, e.g. GSK')
    common.add_argument('--fasta', help='single-record protein FASTA file')
    common.add_argument('--accession', help='accession fetched from the endpoint')
    common.add_argument('--endpoint', help='fetch endpoint, {accession} is substituted')
    common.add_argument('--append-stop', action='store_true', help='append the Stop pseudo-residue')
    common.add_argument('--keep-met', action='store_true', help='do not trim the leading Met')
    common.add_argument('--rho-gc-fraction', type=float, help='target GC fraction in [0, 1]')
    common.add_argument('--layers', type=int)
    common.add_argument('--restarts', type=int)
    common.add_argument('--budget', type=int, help='objective evaluations per restart')
    common.add_argument('--tau', type=float, help='sampling probability threshold')
    common.add_argument('--workers', type=int, help=f'fragment worker processes, defaults to {ENV_WORKERS} or 1')
    common.add_argument('--boundary-fix', action='store_true',
                        help='condition each fragment on the previous fragment\'s last codon')

    parser = argparse.ArgumentParser(prog='qcodon', description='Dense-encoding codon optimization')
    subparsers = parser.add_subparsers(dest='command', required=True)
    subparsers.add_parser('encode', parents=[common], help='qubit layout of a fragment')
    resources = subparsers.add_parser('resources', parents=[common], help='qubit and gate statistics')
    resources.add_argument('--lengths', default='6-20')
    build_ham = subparsers.add_parser('build-ham', parents=[common], help='build the Hamiltonian')
    build_ham.add_argument('--dump', action='store_true', help='include every polynomial term')
    subparsers.add_parser('exact', parents=[common], help='brute-force optimum')
    subparsers.add_parser('vqe', parents=[common], help='variational optimization')
    pipeline = subparsers.add_parser('pipeline', parents=[common], help='fragment the protein and optimize it')
    pipeline.add_argument('--lengths', default='6-20', help='fragment lengths of resources.csv')
    subparsers.add_parser('fetch', parents=[common], help='download a FASTA record')
    return parser


def workers_from_env():
    """
    Worker count from the environment, 1 when unset
    """
    value = os.getenv(ENV_WORKERS, '1')
    try:
        return int(value)
    except ValueError as exc:
        raise exceptions.ValidationError(f"{ENV_WORKERS} must be an integer, got {value!r}") from exc


def main(argv=None):
    """
    Run one subcommand and return the process exit code
    """
    logger = log.setup_custom_logger(LOGGER_NAME)
    args = build_parser().parse_args(argv)
    logger.info(f'qcodon {args.command} started')
    try:
        if args.workers is None:
            args.workers = workers_from_env()
        COMMANDS[args.command](args)
    except exceptions.QCodonError as exc:
        logger.error(f'{type(exc).__name__}: {exc}')
        return exc.exit_code
    except OSError as exc:
        logger.error(f'I/O failure: {exc}')
        return exceptions.IoError.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
