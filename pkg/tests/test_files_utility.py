import json

import pandas as pd
import pytest
from Bio import SeqIO

from qcodon import exceptions
from qcodon.files.utility import (append_json_line, ensure_directory, read_json, write_csv, write_fasta,
                                  write_json)


def test_json_lines(tmp_path):
    path = tmp_path / 'partial.jsonl'
    append_json_line({'index': 0}, path)
    append_json_line({'index': 1}, path)
    assert [json.loads(line)['index'] for line in path.read_text().splitlines()] == [0, 1]


def test_json_round_trip(tmp_path):
    path = write_json({'energy': 9.0}, tmp_path / 'exact.json')
    assert read_json(path) == {'energy': 9.0}


def test_write_fasta(tmp_path):
    path = write_fasta('AUGGGC', 'toy', 'codon-optimized mRNA', tmp_path / 'mrna.fasta')
    record = SeqIO.read(path, 'fasta')
    assert record.id == 'toy'
    assert str(record.seq) == 'AUGGGC'


def test_write_csv(tmp_path):
    path = write_csv(pd.DataFrame({'length': [8], 'scheme': ['dense']}), tmp_path / 'resources.csv')
    assert path.read_text().splitlines() == ['length,scheme', '8,dense']


def test_write_into_missing_directory(tmp_path):
    with pytest.raises(exceptions.IoError):
        write_json({}, tmp_path / 'missing' / 'summary.json')


def test_read_missing_file(tmp_path):
    with pytest.raises(exceptions.IoError):
        read_json(tmp_path / 'nope.json')


def test_ensure_directory_over_file(tmp_path):
    blocker = tmp_path / 'out'
    blocker.write_text('')
    with pytest.raises(exceptions.IoError):
        ensure_directory(blocker / 'nested')
