import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qcodon import exceptions
from qcodon.bio_io import builtin_codon_table
from qcodon.constants import GENETIC_CODE
from qcodon.encoding import (Decoded, Fragment, Invalid, Scheme, build_layout, decode_bits,
                             dense_width, encode_assignment, gate_count, gate_count_for,
                             indicator, pattern_indicator, qubit_count, redundant_patterns,
                             valid_mask)
from qcodon.pipeline import fragment_protein

TABLE = builtin_codon_table()
RESIDUES = sorted(GENETIC_CODE)


@st.composite
def fragments_with_assignment(draw, max_length=4):
    residues = draw(st.lists(st.sampled_from(RESIDUES), min_size=1, max_size=max_length))
    assignment = tuple(draw(st.integers(0, TABLE.count(r) - 1)) for r in residues)
    return Fragment(tuple(residues)), assignment


@pytest.mark.parametrize('count,width', [(1, 0), (2, 1), (3, 2), (4, 2), (6, 3)])
def test_dense_width(count, width):
    assert dense_width(count) == width


def test_gsk_qubit_counts(table):
    fragment = Fragment.from_string('GSK')
    assert qubit_count(fragment, table, Scheme.DENSE) == 6
    assert qubit_count(fragment, table, Scheme.ONE_HOT) == 12


def test_layout_offsets(table):
    layout = build_layout(Fragment.from_string('GSKM'), table, Scheme.DENSE)
    assert layout.widths == (2, 3, 1, 0)
    assert layout.offsets == (0, 2, 5, 6)
    assert layout.total_qubits == 6
    assert list(layout.qubits(1)) == [2, 3, 4]


def test_patterns(table):
    dense = build_layout(Fragment.from_string('S'), table, Scheme.DENSE)
    onehot = build_layout(Fragment.from_string('K'), table, 'onehot')
    assert dense.pattern(0, 5) == (1, 0, 1)
    assert onehot.pattern(0, 1) == (0, 1)
    with pytest.raises(exceptions.IndexOutOfRange):
        dense.pattern(0, 6)


def test_unknown_scheme():
    with pytest.raises(exceptions.ValidationError):
        Scheme.parse('binary')
    assert Scheme.parse('one-hot') is Scheme.ONE_HOT


def test_redundant_patterns(table):
    layout = build_layout(Fragment.from_string('SIK'), table, Scheme.DENSE)
    assert redundant_patterns(0, layout) == [(1, 1, 0), (1, 1, 1)]
    assert redundant_patterns(1, layout) == [(1, 1)]
    assert redundant_patterns(2, layout) == []
    with pytest.raises(exceptions.SchemeMismatch):
        redundant_patterns(0, build_layout(Fragment.from_string('S'), table, Scheme.ONE_HOT))


def test_decode_all_zero_dense(table):
    layout = build_layout(Fragment.from_string('GSK'), table, Scheme.DENSE)
    decoded = decode_bits('000000', layout, table)
    assert isinstance(decoded, Decoded)
    assert decoded.indices == (0, 0, 0)
    assert decoded.mrna == 'GGAAGCAAA'


def test_decode_redundant_pattern(table):
    layout = build_layout(Fragment.from_string('GSK'), table, Scheme.DENSE)
    assert decode_bits('001100', layout) == Invalid(1)


def test_decode_onehot_rejects_zero_or_double(table):
    layout = build_layout(Fragment.from_string('KN'), table, Scheme.ONE_HOT)
    assert decode_bits((0, 1, 1, 1), layout) == Invalid(1)
    assert decode_bits((0, 0, 1, 0), layout) == Invalid(0)
    assert decode_bits((0, 1, 1, 0), layout).codons == ('AAG', 'AAC')


def test_decode_length_mismatch(table):
    layout = build_layout(Fragment.from_string('GSK'), table, Scheme.DENSE)
    with pytest.raises(exceptions.LengthMismatch):
        decode_bits('0000', layout)


def test_single_codon_fragment_needs_no_qubits(table):
    layout = build_layout(Fragment.from_string('MW'), table, Scheme.DENSE)
    assert layout.total_qubits == 0
    assert decode_bits((), layout).codons == ('AUG', 'UGG')


def test_unknown_residue_in_fragment(table):
    with pytest.raises(exceptions.UnknownResidue) as info:
        build_layout(Fragment.from_string('GXK'), table)
    assert info.value.position == 1


@pytest.mark.parametrize('scheme', list(Scheme))
def test_valid_mask_agrees_with_decode(table, scheme):
    layout = build_layout(Fragment.from_string('GSI'), table, scheme)
    n = layout.total_qubits
    mask = valid_mask(layout, np.arange(1 << n))
    expected = [decode_bits(format(b, f'0{n}b'), layout).valid for b in range(1 << n)]
    assert mask.tolist() == expected
    assert mask.sum() == 4 * 6 * 3


@given(fragments_with_assignment(), st.sampled_from(list(Scheme)))
@settings(max_examples=200, deadline=None)
def test_indicators_partition_valid_states(case, scheme):
    fragment, assignment = case
    layout = build_layout(fragment, TABLE, scheme)
    bits = encode_assignment(assignment, layout)
    assert decode_bits(bits, layout).indices == assignment
    for position in range(len(fragment)):
        values = [indicator(position, k, layout).evaluate(bits) for k in range(layout.codon_count(position))]
        assert values == [1.0 if k == assignment[position] else 0.0 for k in range(len(values))]


@given(fragments_with_assignment(), st.data())
@settings(max_examples=200, deadline=None)
def test_dense_indicators_partition_every_pattern(case, data):
    fragment, _ = case
    layout = build_layout(fragment, TABLE, Scheme.DENSE)
    position = data.draw(st.integers(0, len(fragment) - 1))
    width = layout.widths[position]
    indicators = [indicator(position, k, layout) for k in range(layout.codon_count(position))]
    indicators += [pattern_indicator(position, p, layout) for p in redundant_patterns(position, layout)]
    assert len(indicators) == 1 << width

    offset = layout.offsets[position]
    states = []
    for pattern in itertools.product((0, 1), repeat=width):
        bits = [0] * layout.total_qubits
        bits[offset:offset + width] = pattern
        states.append(bits)
    for bits in states:
        assert sum(p.evaluate(bits) for p in indicators) == 1.0
    for p in indicators:
        assert [p.evaluate(bits) for bits in states].count(1.0) == 1


def test_gate_count(table):
    estimate = gate_count_for(6, 2)
    assert (estimate.rotations, estimate.entanglers, estimate.total) == (18, 10, 28)
    layout = build_layout(Fragment.from_string('GSK'), table)
    assert gate_count(layout, 1).total == 6 * 2 + 5
    with pytest.raises(exceptions.ZeroQubits):
        gate_count_for(0)
    with pytest.raises(exceptions.ValidationError):
        gate_count_for(4, 0)


def test_spike_register_sizes(spike, table):
    whole = Fragment.from_protein(spike)
    assert qubit_count(whole, table, Scheme.DENSE) == 2234
    assert qubit_count(whole, table, Scheme.ONE_HOT) == 4418
    plan = fragment_protein(spike, 8)
    assert sum(qubit_count(f, table, Scheme.ONE_HOT) for f in plan.fragments) == 4417
    assert sum(qubit_count(f, table, Scheme.DENSE) for f in plan.fragments) == 2234
