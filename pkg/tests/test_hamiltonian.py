import json
import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from qcodon import exceptions
from qcodon.bio_io import builtin_codon_table, load_usage_frequencies
from qcodon.constants import GENETIC_CODE
from qcodon.encoding import Fragment, Scheme, build_layout, encode_assignment, qubit_count, valid_mask
from qcodon.hamiltonian import (HamiltonianWeights, build_hf, build_hp, build_hr, build_total,
                                direct_energy, dominance_bound, load_weights, resolve_weights)

TABLE = builtin_codon_table()
# skewed usage so the frequency term is not flat
USAGE_TABLE = load_usage_frequencies([('GCC', 0.4), ('GCU', 0.3), ('GCA', 0.2), ('GCG', 0.1),
                                      ('CUG', 0.5), ('CUC', 0.2), ('UUA', 0.3),
                                      ('AGC', 0.0), ('UCU', 1.0), ('UCC', 2.0)])
RESIDUES = sorted(GENETIC_CODE)

weight_values = st.floats(0, 5, allow_nan=False)
weights_strategy = st.builds(HamiltonianWeights, c_f=weight_values, c_gc=weight_values, c_r=weight_values,
                             c_p=st.none(), rho_gc=st.floats(0, 3))


@st.composite
def fragments_with_assignment(draw, max_length=6):
    residues = draw(st.lists(st.sampled_from(RESIDUES), min_size=1, max_size=max_length))
    assignment = tuple(draw(st.integers(0, TABLE.count(r) - 1)) for r in residues)
    return Fragment(tuple(residues)), assignment


@given(fragments_with_assignment(), weights_strategy, st.sampled_from(list(Scheme)),
       st.sampled_from([TABLE, USAGE_TABLE]))
@settings(max_examples=1000, deadline=None)
def test_polynomial_matches_direct_energy(case, weights, scheme, table):
    fragment, assignment = case
    layout = build_layout(fragment, table, scheme)
    hamiltonian = build_total(layout, table, weights)
    bits = encode_assignment(assignment, layout)
    assert abs(hamiltonian.evaluate(bits) - direct_energy(assignment, fragment, table, weights)) <= 1e-9


@given(fragments_with_assignment(max_length=4), weights_strategy, st.sampled_from(list(Scheme)))
@settings(max_examples=50, deadline=None)
def test_penalty_dominates_every_redundant_state(case, weights, scheme):
    fragment, _ = case
    assume(0 < qubit_count(fragment, USAGE_TABLE, scheme) <= 16)
    layout = build_layout(fragment, USAGE_TABLE, scheme)
    diagonal = build_total(layout, USAGE_TABLE, weights).to_diagonal()
    mask = valid_mask(layout, np.arange(diagonal.size))
    assume(not mask.all())
    assert diagonal[~mask].min() > diagonal[mask].min()


def test_gc_only_example(table):
    fragment = Fragment.from_string('GSK')
    weights = HamiltonianWeights(c_f=0, c_gc=1, c_r=0, c_p=0, rho_gc=3)
    # GGC AGC AAG carries 6 GC against a target of 9
    assert direct_energy((1, 0, 1), fragment, table, weights) == 9.0
    layout = build_layout(fragment, table)
    assert build_total(layout, table, weights).evaluate(encode_assignment((1, 0, 1), layout)) == pytest.approx(9.0)


def test_usage_term_prefers_frequent_codon():
    fragment = Fragment.from_string('A')
    layout = build_layout(fragment, USAGE_TABLE)
    hf = build_hf(layout, USAGE_TABLE, HamiltonianWeights())
    energies = [hf.evaluate(encode_assignment((k,), layout)) for k in range(4)]
    # GCA GCC GCG GCU
    assert int(np.argmin(energies)) == 1
    assert energies[1] == pytest.approx(-math.log(0.4 + 1e-6))


def test_zero_frequency_codon_costs_log_eps():
    fragment = Fragment.from_string('S')
    weights = HamiltonianWeights(c_gc=0, c_r=0)
    assert direct_energy((0,), fragment, USAGE_TABLE, weights) == pytest.approx(-math.log(1e-6))


def test_repeat_seam_with_previous_codon(table):
    fragment = Fragment.from_string('K')
    weights = HamiltonianWeights(c_f=0, c_gc=0, c_r=2, c_p=0)
    layout = build_layout(fragment, table)
    hr = build_hr(layout, table, weights, previous_codon='AAA')
    # AAA AAA repeats six times, score 4
    assert hr.evaluate((0,)) == 8.0
    assert direct_energy((0,), fragment, table, weights, previous_codon='AAA') == 8.0
    assert build_hr(layout, table, weights).is_zero()


def test_onehot_penalty(table):
    layout = build_layout(Fragment.from_string('K'), table, Scheme.ONE_HOT)
    hp = build_hp(layout, HamiltonianWeights(c_p=2.0))
    assert [hp.evaluate(bits) for bits in ((0, 0), (0, 1), (1, 0), (1, 1))] == [2.0, 0.0, 0.0, 2.0]


def test_dense_penalty_marks_redundant_patterns(table):
    layout = build_layout(Fragment.from_string('I'), table)
    hp = build_hp(layout, HamiltonianWeights(c_p=5.0))
    assert hp.to_diagonal().tolist() == [0.0, 0.0, 0.0, 5.0]


def test_unresolved_penalty(table):
    layout = build_layout(Fragment.from_string('I'), table)
    with pytest.raises(exceptions.InvalidWeights):
        build_hp(layout, HamiltonianWeights())


def test_resolve_weights_uses_dominance_bound(table):
    fragment = Fragment.from_string('GSK')
    weights = HamiltonianWeights()
    resolved = resolve_weights(fragment, table, weights)
    assert resolved.c_p == pytest.approx(dominance_bound(fragment, table, weights))
    assert resolve_weights(fragment, table, HamiltonianWeights(c_p=3.0)).c_p == 3.0


def test_dominance_bound_value(table):
    fragment = Fragment.from_string('GK')
    weights = HamiltonianWeights(c_f=0, c_gc=1, c_r=1, rho_gc=1.5)
    # 1 + max((6 - 3)^2, 3^2) + 4 * 1
    assert dominance_bound(fragment, table, weights) == pytest.approx(14.0)
    assert dominance_bound(fragment, table, weights, previous_codon='AUG') == pytest.approx(18.0)


def test_zero_weights_vanish(table):
    layout = build_layout(Fragment.from_string('GSK'), table)
    assert build_total(layout, table, HamiltonianWeights.zero()).is_zero()


@pytest.mark.parametrize('data', [
    {'c_f': -1.0},
    {'eps_f': 0.0},
    {'rho_gc': 3.5},
    {'c_p': 'sometimes'},
    {'c_x': 1.0},
    {'rho_gc': {'fraction': 1.5}},
    {'c_gc': float('nan')},
])
def test_invalid_weights(data):
    with pytest.raises(exceptions.InvalidWeights):
        HamiltonianWeights.from_dict(data)


def test_weights_from_file(tmp_path):
    path = tmp_path / 'weights.json'
    path.write_text(json.dumps({'c_f': 0.5, 'c_p': 'auto', 'rho_gc': {'fraction': 0.5}}))
    weights = load_weights(path)
    assert weights.c_f == 0.5
    assert weights.c_p is None
    assert weights.rho_gc == 1.5
    assert weights.to_dict()['c_p'] == 'auto'


def test_weights_file_not_json(tmp_path):
    path = tmp_path / 'weights.json'
    path.write_text('c_f = 1')
    with pytest.raises(exceptions.ValidationError):
        load_weights(path)
