# -*- coding: utf-8 -*-
# Copyright (c) 2024 wazn.core contributors
# See LICENSE.rst for details.

"""
Tests for the :py:mod:`wazn.core.stemmer` module.
"""

import pytest

from wazn.core import semiring as sr
from wazn.core.alphabet import alphabet
from wazn.core.error import EmptyInventoryError, FormatError, PatternError, SymbolNotFoundError
from wazn.core.paths import input_strings, output_strings, weight_of_pair
from wazn.core.rational import compose, project
from wazn.core.scorer import default_roots, train_scorer
from wazn.core.stemmer import (affix_inventory, analyze, best_stem, build_stemmer,
                               candidate_stems, compile_affixes, compile_pattern,
                               compile_stemmer, load_patterns, pattern, stem,
                               stemmer_config, stemming_model, weighted_candidates)
from wazn.core.synthetic import generator
from wazn.core.wfst import linear_from_string

from helpers import bw, decompositions, get_reference_file


@pytest.fixture(scope='module')
def letters():
    return alphabet.default()


@pytest.fixture(scope='module')
def bundled():
    return stemmer_config.default().load()


@pytest.fixture(scope='module')
def stemmer():
    return build_stemmer(stemmer_config.default())[0]


@pytest.fixture(scope='module')
def scorer(letters):
    return train_scorer(default_roots(letters), letters=letters.letters)


def _machine(letters, *templates, affixes=None):
    patterns = [pattern.parse(t, 'verb', letters) for t in templates]
    return compile_stemmer(letters, patterns, affixes or affix_inventory())


def test_pattern_parse(letters):
    p = pattern.parse('م123ة', 'noun', letters)
    assert p.template == ('م', 1, 2, 3, 'ت')
    assert p.arity == 3
    assert str(p) == 'م123ت'
    assert p.instantiate(bw('drs')) == bw('mdrst')
    assert p.matches(bw('mdrst')) == bw('drs')
    assert p.matches(bw('mdrs')) is None
    assert p.matches(bw('kdrst')) is None


@pytest.mark.parametrize('template,category', [
    ([1, 3, 2], 'noun'),
    ([1, 2], 'noun'),
    ([1, 2, 3, 4, 5], 'verb'),
    ([1, 1, 2, 3], 'verb'),
    ([1, 2, 3], 'particle'),
])
def test_pattern_errors(template, category):
    with pytest.raises(PatternError):
        pattern(template, category)


def test_instantiate_wrong_arity(letters):
    with pytest.raises(PatternError):
        pattern.parse('123', 'verb', letters).instantiate(bw('drsm'))


def test_load_patterns(letters):
    patterns = load_patterns(get_reference_file('patterns.tsv'), letters)
    assert [str(p) for p in patterns] == ['123', '1ا23', 'ي123']
    assert [p.category for p in patterns] == ['noun', 'noun', 'verb']


def test_load_patterns_malformed(tmp_path, letters):
    path = tmp_path / 'patterns.tsv'
    path.write_text('noun 123\n', encoding='utf-8')
    with pytest.raises(FormatError):
        load_patterns(path, letters)
    path.write_text('noun\t12\n', encoding='utf-8')
    with pytest.raises(PatternError, match=':1:'):
        load_patterns(path, letters)


def test_affix_inventory(letters):
    affixes = affix_inventory.load(stemmer_config.default().affix_file, letters)
    assert affixes.verb_prefixes == tuple('اتني')
    assert len(affixes.noun_prefixes) == 12
    assert 'ة' not in affixes.suffixes
    assert affixes.suffixes.count('ت') == 1
    assert affixes.prefixes('noun') is affixes.noun_prefixes


def test_compile_pattern_table_1(letters):
    t = compile_pattern(pattern.parse('1ا23', 'noun', letters), letters)
    assert weight_of_pair(t, bw('dArs'), bw('drs')) == 1.0
    stems = project(compose(linear_from_string(bw('dArs'), symbols=t.isymbols), t), 'output')
    assert output_strings(stems) == {tuple(bw('drs')): 1.0}

    t = compile_pattern(pattern.parse('ي123', 'verb', letters), letters)
    assert output_strings(compose(linear_from_string(bw('ydrs'), symbols=t.isymbols), t)) == {tuple(bw('drs')): 1.0}


def test_compile_pattern_all_slots(letters):
    t = compile_pattern(pattern.parse('123', 'noun', letters), letters)
    for w in (bw('drs'), bw('ktb'), bw('yyy')):
        assert weight_of_pair(t, w, w) == 1.0


def test_compile_affixes_accepts_inventory(letters):
    suffixes = affix_inventory.load(stemmer_config.default().affix_file, letters).suffixes
    t = compile_affixes(suffixes, letters)
    accepted = {''.join(s) for s in input_strings(t)}
    assert accepted == set(suffixes) | {''}
    assert set(output_strings(t)) == {()}


def test_prefix_deleted_before_pattern(stemmer):
    assert bw('ktb') in candidate_stems(stemmer, bw('AlktAb'))


def test_bare_pattern_word(stemmer):
    assert bw('drs') in candidate_stems(stemmer, bw('drs'))


def test_mdrst_candidates(stemmer):
    assert bw('drs') in candidate_stems(stemmer, bw('mdrst'))


def test_antsr_candidates(stemmer):
    assert candidate_stems(stemmer, bw('AntSr')) >= {bw('tSr'), bw('nSr')}


def test_antsr_two_measures(letters):
    t = _machine(letters, 'ان123', 'ا1ت23')
    assert candidate_stems(t, bw('AntSr')) == {bw('tSr'), bw('nSr')}


def test_single_measure(letters):
    assert candidate_stems(_machine(letters, '123'), bw('drs')) == {bw('drs')}


def test_no_candidates(stemmer):
    assert candidate_stems(stemmer, bw('bk')) == set()


def test_word_must_be_normalized(stemmer):
    with pytest.raises(SymbolNotFoundError):
        candidate_stems(stemmer, 'abc')


def test_empty_pattern_inventory(tmp_path):
    default = stemmer_config.default()
    path = tmp_path / 'patterns.tsv'
    path.write_text('# nothing\n', encoding='utf-8')
    with pytest.raises(EmptyInventoryError):
        build_stemmer(stemmer_config(path, default.affix_file, default.normalization_file))


@pytest.mark.timeout(120)
def test_candidates_match_decomposition_oracle(bundled, stemmer):
    letters, patterns, affixes = bundled
    gen = generator(seed=42)
    for s in gen.words(100):
        found = candidate_stems(stemmer, s.word)
        assert found == decompositions(s.word, patterns, affixes)
        assert s.root in found


def test_stem_prefers_dominant_bigrams(letters):
    t = _machine(letters, 'ان123', 'ا1ت23')
    sc = train_scorer([bw('nSr')] * 5 + [bw('tSr'), bw('tbE')], letters=letters.letters)
    a = analyze(t, sc, bw('AntSr'))
    assert a.stem == bw('nSr')
    assert a.score == 1.0
    assert a.candidates == tuple(sorted([bw('nSr'), bw('tSr')]))
    assert a.stemmed


def test_stem_mdrst(stemmer, scorer):
    assert stem(stemmer, scorer, bw('mdrst')) == bw('drs')


def test_stem_single_candidate(letters):
    sc = train_scorer([bw('ktb')], letters=letters.letters)
    assert stem(_machine(letters, '123'), sc, bw('drs')) == bw('drs')


def test_stem_tie_goes_to_smallest(letters):
    t = _machine(letters, 'ان123', 'ا1ت23')
    sc = train_scorer([bw('ktb')], letters=letters.letters)
    assert stem(t, sc, bw('AntSr')) == min(bw('tSr'), bw('nSr'))


def test_unstemmed_word(stemmer, scorer):
    a = analyze(stemmer, scorer, bw('bk'))
    assert a.stem == bw('bk')
    assert a.candidates == ()
    assert not a.stemmed


def test_weighted_candidates(letters):
    t = _machine(letters, 'ان123', 'ا1ت23')
    sc = train_scorer([bw('nSr')] * 5 + [bw('tSr'), bw('tbE')], letters=letters.letters)
    w = weighted_candidates(t, sc, bw('AntSr'))
    assert w.semiring is sr.tropical
    assert best_stem(t, sc, bw('AntSr')) == stem(t, sc, bw('AntSr'))
    assert best_stem(t, train_scorer([bw('ktb')], letters=letters.letters), bw('AntSr')) is None


def test_stemming_model_round_trip(tmp_path, scorer):
    model = stemming_model.build(stemmer_config.default(), scorer)
    assert model.stem('مدرسة') == bw('drs')
    assert model.symbols.find('#') == 29

    path = tmp_path / 'model.stem'
    model.save(path)
    assert path.read_bytes().startswith(b'WAZN.CORE.STEMMING_MODEL\n')
    loaded = stemming_model.load(path)
    assert loaded.dumps() == model.dumps()
    assert loaded.analyze('مدرسة') == model.analyze('مدرسة')
    assert stemming_model.loads(model.dumps()).stem('مدرسة') == bw('drs')


def test_stemming_model_bad_file(tmp_path):
    path = tmp_path / 'model.stem'
    path.write_bytes(b'not a model\n')
    with pytest.raises(FormatError):
        stemming_model.load(path)
    with pytest.raises(FormatError):
        stemming_model.loads(b'WAZN')


@pytest.mark.timeout(900)
def test_thousand_words_match_decomposition_oracle(bundled, stemmer, scorer):
    letters, patterns, affixes = bundled
    gen = generator(seed=7)
    roots = gen.roots(40)
    for s in gen.words(1000, roots):
        found = candidate_stems(stemmer, s.word)
        assert found == decompositions(s.word, patterns, affixes), s.word
        assert s.root in found
        if found == {s.root}:
            assert stem(stemmer, scorer, s.word) == s.root

    # a bare root of pool letters only reads as itself
    for root in roots:
        assert candidate_stems(stemmer, root) == decompositions(root, patterns, affixes) == {root}
        assert stem(stemmer, scorer, root) == root
