# -*- coding: utf-8 -*-
# Copyright (c) 2024 wazn.core contributors
# See LICENSE.rst for details.

"""
Tests for the :py:mod:`wazn.core.wfst` module.
"""

import math

import numpy as np
import pytest

from wazn.core import semiring as sr
from wazn.core.error import CyclicMachineError, SymbolNotFoundError
from wazn.core.paths import weight_of_pair
from wazn.core.symbols import EPSILON, symbol_table
from wazn.core.wfst import (arcsort, builder, empty, epsilon_machine, from_pairs, invert,
                            linear_from_string, map_weights, trim)

from helpers import pair_weights, random_machine


def test_linear_from_string():
    t = linear_from_string('drs')
    assert t.num_states == 4
    assert t.num_arcs == 3
    assert dict(t.initial) == {0: 1.0}
    assert dict(t.final) == {3: 1.0}
    assert all(a.ilabel == a.olabel for a in t.arcs())
    assert weight_of_pair(t, 'drs', 'drs') == 1.0
    assert weight_of_pair(t, 'dr', 'dr') == 0.0


def test_linear_from_empty_string():
    t = linear_from_string('')
    assert t.num_states == 1
    assert dict(t.initial) == {0: 1.0}
    assert dict(t.final) == {0: 1.0}
    assert weight_of_pair(t, '', '') == 1.0


def test_linear_from_string_checks_symbols():
    with pytest.raises(SymbolNotFoundError):
        linear_from_string('abz', symbols=symbol_table('ab'))


def test_empty_and_epsilon_machine():
    assert pair_weights(empty()) == {}
    assert pair_weights(epsilon_machine()) == {((), ()): 1.0}
    assert pair_weights(epsilon_machine(sr.tropical)) == {((), ()): 0.0}


def test_zero_weights_are_dropped():
    b = builder()
    b.add_states(2)
    b.set_initial(0)
    b.set_final(1, 0.0)
    t = b.build()
    assert dict(t.final) == {}


def test_topological_order():
    b = builder()
    b.add_states(4)
    b.set_initial(0)
    b.add_arc(0, 'a', 'a', dst=2)
    b.add_arc(2, 'b', 'b', dst=1)
    b.add_arc(1, 'c', 'c', dst=3)
    b.set_final(3)
    t = b.build()
    assert t.acyclic
    assert t.topological_order() == (0, 2, 1, 3)


def test_cyclic_machine():
    b = builder()
    b.add_states(2)
    b.set_initial(0)
    b.add_arc(0, 'a', 'a', dst=1)
    b.add_arc(1, 'a', 'a', dst=0)
    b.set_final(1)
    t = b.build()
    assert not t.acyclic
    with pytest.raises(CyclicMachineError):
        t.topological_order()


def test_trim_dangling_state():
    b = builder()
    b.add_states(4)
    b.set_initial(0)
    b.add_arc(0, 'a', 'b', 0.5, 1)
    b.add_arc(0, 'c', 'c', 0.5, 2)  # 2 is a dead end
    b.set_final(1)
    t = b.build()
    trimmed = trim(t)
    assert trimmed.num_states == 2
    assert pair_weights(trimmed) == pair_weights(t)


def test_trim_already_trim():
    t = linear_from_string('abc')
    assert trim(t) is t


@pytest.mark.timeout(30)
def test_trim_preserves_pair_weights():
    rng = np.random.default_rng(3)
    for _ in range(100):
        t = random_machine(rng)
        trimmed = trim(t)
        assert trimmed.num_states <= t.num_states
        assert pair_weights(trimmed) == pair_weights(t)


def test_arcsort():
    b = builder()
    b.add_states(2)
    b.set_initial(0)
    b.add_arc(0, 'c', 'a', dst=1)
    b.add_arc(0, 'a', 'c', dst=1)
    b.add_arc(0, 'b', 'b', dst=1)
    b.set_final(1)
    t = b.build()
    assert [a.ilabel for a in arcsort(t).arcs(0)] == ['a', 'b', 'c']
    assert [a.olabel for a in arcsort(t, 'olabel').arcs(0)] == ['a', 'b', 'c']
    assert pair_weights(arcsort(t)) == pair_weights(t)


def test_invert():
    t = from_pairs([('ab', 'c', 0.5)])
    assert pair_weights(invert(t)) == {(('c',), ('a', 'b')): 0.5}


def test_map_weights():
    t = from_pairs([('a', 'a', 0.5), ('b', 'b', 0.25)])
    tropical = map_weights(t, sr.tropical, lambda w: -math.log(w))
    assert tropical.semiring is sr.tropical
    assert pair_weights(tropical) == {
        (('a',), ('a',)): pytest.approx(math.log(2)),
        (('b',), ('b',)): pytest.approx(math.log(4)),
    }


def test_from_pairs():
    t = from_pairs([('ab', 'x', 2.0), ('', '', 3.0), ('c', 'yz')])
    assert pair_weights(t) == {
        (('a', 'b'), ('x',)): 2.0,
        ((), ()): 3.0,
        (('c',), ('y', 'z')): 1.0,
    }
    assert any(a.ilabel == EPSILON for a in t.arcs())


def test_input_output_alphabet():
    t = from_pairs([('ab', 'x')])
    assert t.input_alphabet == frozenset('ab')
    assert t.output_alphabet == frozenset('x')
    with_table = linear_from_string('a', symbols=symbol_table('abc'))
    assert with_table.input_alphabet == frozenset('abc')
