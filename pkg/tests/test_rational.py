# -*- coding: utf-8 -*-
# Copyright (c) 2024 wazn.core contributors
# See LICENSE.rst for details.

"""
Tests for the :py:mod:`wazn.core.rational` module.
"""

import numpy as np
import pytest

from wazn.core import semiring as sr
from wazn.core.error import AlphabetMismatchError
from wazn.core.paths import weight_of_pair
from wazn.core.rational import compose, concat, project, union
from wazn.core.symbols import symbol_table
from wazn.core.wfst import builder, empty, epsilon_machine, from_pairs, linear_from_string

from helpers import pair_weights, random_machine, strings_up_to


def _sum(K, *dicts):
    out = {}
    for d in dicts:
        for k, w in d.items():
            out[k] = K.plus(out.get(k, K.zero), w)
    return out


def _concat(K, d1, d2):
    out = {}
    for (x1, y1), w1 in d1.items():
        for (x2, y2), w2 in d2.items():
            k = (x1 + x2, y1 + y2)
            out[k] = K.plus(out.get(k, K.zero), K.times(w1, w2))
    return out


def _compose(K, d1, d2):
    out = {}
    for (x, z1), w1 in d1.items():
        for (z2, y), w2 in d2.items():
            if z1 == z2:
                out[(x, y)] = K.plus(out.get((x, y), K.zero), K.times(w1, w2))
    return out


def test_union_sums_weights():
    t = union(from_pairs([('a', 'b', 0.5)]), from_pairs([('a', 'b', 0.25)]))
    assert weight_of_pair(t, 'a', 'b') == 0.75


def test_union_with_empty_machine():
    t = from_pairs([('ab', 'c', 2.0), ('a', '', 3.0)])
    assert pair_weights(union(t, empty())) == pair_weights(t)
    assert pair_weights(union(empty(), t)) == pair_weights(t)


def test_union_of_many():
    t = union(linear_from_string('a'), linear_from_string('b'), linear_from_string('a'))
    assert pair_weights(t) == {(('a',), ('a',)): 2.0, (('b',), ('b',)): 1.0}


def test_concat_linear():
    t = concat(linear_from_string('ab'), linear_from_string('c'))
    assert pair_weights(t) == {(('a', 'b', 'c'), ('a', 'b', 'c')): 1.0}


def test_concat_with_epsilon_machine():
    t = from_pairs([('ab', 'c', 2.0), ('a', '', 3.0)])
    assert pair_weights(concat(t, epsilon_machine())) == pair_weights(t)
    assert pair_weights(concat(epsilon_machine(), t)) == pair_weights(t)


def test_concat_ambiguous_splits():
    # "aa" splits as a|a, aa|, |aa
    t1 = from_pairs([('a', 'a', 2.0), ('aa', 'aa', 3.0), ('', '', 5.0)])
    t2 = from_pairs([('a', 'a', 7.0), ('', '', 11.0), ('aa', 'aa', 13.0)])
    assert weight_of_pair(concat(t1, t2), 'aa', 'aa') == 2 * 7 + 3 * 11 + 5 * 13


def test_compose_single_intermediate():
    t = compose(from_pairs([('a', 'b', 0.5)]), from_pairs([('b', 'c', 0.2)]))
    assert weight_of_pair(t, 'a', 'c') == pytest.approx(0.1)
    assert pair_weights(t).keys() == {(('a',), ('c',))}


def test_compose_epsilon_paths_counted_once():
    # t1 ends on an output epsilon, t2 starts on an input epsilon
    b = builder()
    b.add_states(3)
    b.set_initial(0)
    b.add_arc(0, 'a', 'b', 2.0, 1)
    b.add_arc(1, 'a', '<eps>', 3.0, 2)
    b.set_final(2)
    t1 = b.build()

    b = builder()
    b.add_states(3)
    b.set_initial(0)
    b.add_arc(0, '<eps>', 'x', 5.0, 1)
    b.add_arc(1, 'b', 'y', 7.0, 2)
    b.set_final(2)
    t2 = b.build()

    assert pair_weights(compose(t1, t2)) == {(('a', 'a'), ('x', 'y')): 2.0 * 3.0 * 5.0 * 7.0}


def test_compose_checks_symbol_tables():
    t1 = linear_from_string('ab', symbols=symbol_table('ab'))
    t2 = linear_from_string('ab', symbols=symbol_table('ba'))
    with pytest.raises(AlphabetMismatchError):
        compose(t1, t2)


def test_semiring_mismatch():
    with pytest.raises(ValueError):
        union(linear_from_string('a'), linear_from_string('a', sr.tropical))


def test_project():
    t = from_pairs([('ab', 'cd', 0.5), ('a', 'e', 0.25)])
    assert pair_weights(project(t, 'output')) == {
        (('c', 'd'), ('c', 'd')): 0.5,
        (('e',), ('e',)): 0.25,
    }
    assert pair_weights(project(t, 'input')) == {
        (('a', 'b'), ('a', 'b')): 0.5,
        (('a',), ('a',)): 0.25,
    }
    with pytest.raises(ValueError):
        project(t, 'both')


def test_project_identity_machine():
    t = linear_from_string('drs')
    assert pair_weights(project(t, 'input')) == pair_weights(t)


@pytest.mark.timeout(120)
@pytest.mark.parametrize('K', [sr.real, sr.tropical], ids=['real', 'tropical'])
def test_rational_operations_against_path_oracle(K):
    rng = np.random.default_rng(2024)
    for _ in range(100):
        t1 = random_machine(rng, K, alphabet='ab')
        t2 = random_machine(rng, K, alphabet='ab')
        d1, d2 = pair_weights(t1), pair_weights(t2)
        assert pair_weights(union(t1, t2)) == _sum(K, d1, d2)
        assert pair_weights(concat(t1, t2)) == {k: w for k, w in _concat(K, d1, d2).items() if w != K.zero}
        assert pair_weights(compose(t1, t2)) == {k: w for k, w in _compose(K, d1, d2).items() if w != K.zero}


@pytest.mark.timeout(120)
def test_weight_of_pair_matches_enumeration():
    rng = np.random.default_rng(11)
    for _ in range(30):
        t = random_machine(rng, alphabet='ab')
        expected = pair_weights(t)
        for x in strings_up_to('ab', 3):
            for y in strings_up_to('ab', 3):
                assert weight_of_pair(t, x, y) == expected.get((x, y), 0.0)
