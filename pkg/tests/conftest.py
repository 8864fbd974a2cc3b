import os

import pytest

from qcodon.bio_io import builtin_codon_table, read_fasta

DATA_DIR = os.path.join(os.path.dirname(__file__), 'data')


@pytest.fixture(scope='session')
def table():
    return builtin_codon_table()


@pytest.fixture(scope='session')
def spike():
    return read_fasta(os.path.join(DATA_DIR, 'P0DTC2.fasta'))


@pytest.fixture(scope='session')
def data_dir():
    return DATA_DIR
