import pickle

import pytest
from hypothesis import given, strategies as st

from qcodon import exceptions
from qcodon.bio_io import (ProteinSequence, builtin_codon_table, check_codon, encodes,
                           gc_count, load_usage_frequencies, parse_fasta, read_fasta,
                           read_usage_csv, repeat_score, translate, with_stop, _freeze)

codons = st.text(alphabet='ACGU', min_size=3, max_size=3)


def test_spike_record(spike):
    assert spike.id == 'sp|P0DTC2|SPIKE_SARS2'
    assert len(spike) == 1273
    assert spike.sequence.startswith('MFVFLVLLPLV')
    assert spike.sequence.endswith('KLHYT')


def test_parse_fasta_lowercase_and_wrapped():
    protein = parse_fasta('>p1 some protein\nmgs\nk\n')
    assert protein.id == 'p1'
    assert protein.sequence == 'MGSK'


def test_parse_fasta_keeps_first_record():
    protein = parse_fasta('>a\nGSK\n>b\nWWW\n')
    assert protein.id == 'a'
    assert protein.sequence == 'GSK'


@pytest.mark.parametrize('text', ['GSK\n', '', '>\nGSK\n', '>   \nGSK\n'])
def test_parse_fasta_malformed_header(text):
    with pytest.raises(exceptions.MalformedHeader):
        parse_fasta(text)


def test_parse_fasta_empty_record():
    with pytest.raises(exceptions.EmptySequence):
        parse_fasta('>p1\n\n')


def test_parse_fasta_unknown_residue():
    with pytest.raises(exceptions.UnknownResidue) as info:
        parse_fasta('>p1\nMKX\n')
    assert info.value.letter == 'X'
    assert info.value.position == 2


def test_read_fasta_missing_file(tmp_path):
    with pytest.raises(exceptions.IoError):
        read_fasta(tmp_path / 'missing.fasta')


def test_builtin_table_order(table):
    assert table.lookup('S') == ('AGC', 'AGU', 'UCA', 'UCC', 'UCG', 'UCU')
    assert table.lookup('G') == ('GGA', 'GGC', 'GGG', 'GGU')
    assert table.count('L') == 6
    assert table.count('M') == 1
    assert table.count('W') == 1
    assert table.count('*') == 3
    assert table.family_frequencies('A') == pytest.approx((0.25,) * 4)


def test_lookup_unknown_residue(table):
    with pytest.raises(exceptions.UnknownResidue):
        table.lookup('X')


def test_table_survives_pickle(table):
    restored = pickle.loads(pickle.dumps(table))
    assert restored.to_dict() == table.to_dict()


def test_usage_csv_renormalized(data_dir):
    table = load_usage_frequencies(read_usage_csv(f'{data_dir}/usage.csv'))
    assert table.lookup('A') == ('GCA', 'GCC', 'GCG', 'GCU')
    total = 15.8 + 27.7 + 7.4 + 18.4
    assert table.family_frequencies('A') == pytest.approx((15.8 / total, 27.7 / total, 7.4 / total, 18.4 / total))
    assert table.family_frequencies('K') == pytest.approx((24.4 / 56.3, 31.9 / 56.3))
    # untouched families keep the uniform defaults
    assert table.family_frequencies('G') == pytest.approx((0.25,) * 4)


def test_usage_missing_codon_gets_zero():
    table = load_usage_frequencies([('AAA', 3.0)])
    assert table.family_frequencies('K') == (1.0, 0.0)


def test_usage_negative_frequency():
    with pytest.raises(exceptions.NegativeFrequency):
        load_usage_frequencies([('AAA', -1.0)])


def test_usage_all_zero_family():
    with pytest.raises(exceptions.AllZeroFamily) as info:
        load_usage_frequencies([('AAA', 0.0), ('AAG', 0.0)])
    assert info.value.amino_acid == 'K'


def test_usage_unknown_codon():
    base = _freeze({'K': ('AAA', 'AAG')}, {'K': (0.5, 0.5)})
    with pytest.raises(exceptions.UnknownCodon):
        load_usage_frequencies([('GCC', 1.0)], base)


def test_usage_invalid_codon():
    with pytest.raises(exceptions.InvalidCodon):
        load_usage_frequencies([('AXA', 1.0)])


@pytest.mark.parametrize('codon,expected', [('GCC', 3), ('AUA', 0), ('AGC', 2), ('UUG', 1)])
def test_gc_count(codon, expected):
    assert gc_count(codon) == expected


@pytest.mark.parametrize('a,b,expected', [
    ('AAA', 'AAA', 4),
    ('GCA', 'AAA', 2),
    ('GAA', 'AUG', 1),
    ('AUG', 'CUA', 0),
    ('GGU', 'AAG', 0),
])
def test_repeat_score(a, b, expected):
    assert repeat_score(a, b) == expected


@given(codons, codons)
def test_repeat_score_range(a, b):
    assert 0 <= repeat_score(a, b) <= 4


def test_check_codon_rejects_dna():
    with pytest.raises(exceptions.InvalidCodon):
        check_codon('ATG')


def test_translate_and_encodes():
    assert translate('AUGGCCUAA') == 'MA*'
    assert encodes('AAUGAA', ('B', 'Z'))
    assert not encodes('AAUGAA', ('N', 'Q'))
    assert not encodes('AAU', ('N', 'N'))


def test_with_stop():
    protein = with_stop(ProteinSequence.from_string('GSK', id='p'))
    assert protein.sequence == 'GSK*'
    assert protein.id == 'p'


def test_empty_protein():
    with pytest.raises(exceptions.EmptySequence):
        ProteinSequence.from_string('  ')


def test_codon_table_covers_all_codons():
    table = builtin_codon_table()
    members = {codon for aa, family in table.families.items() if aa not in 'BZ' for codon in family}
    assert len(members) == 64
