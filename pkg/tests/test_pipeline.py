# -*- coding: utf-8 -*-
# Copyright (c) 2024 wazn.core contributors
# See LICENSE.rst for details.

"""
Tests for the :py:mod:`wazn.core.pipeline` module.
"""

import itertools

import pytest

from wazn.core.archive import fst_archive
from wazn.core.corpus import convert, load_corpus, read_split
from wazn.core.error import FormatError, HeaderMismatchError
from wazn.core.kernel import gram_matrix, kernel_distance, kernel_matrix
from wazn.core.pipeline import (OUTPUTS, compile_model, evaluate_predictions, format_analysis,
                                pipeline_config, predict_split, run, stem_words, train)
from wazn.core.svm import ovr_model, read_predictions
from wazn.core.synthetic import generate_corpus

from helpers import bw


def run_in(directory, seed=0):
    manifest = generate_corpus(directory / 'corpus', classes=2, docs_per_class=6,
                               roots_per_class=3, words_per_doc=12, seed=seed)
    config = pipeline_config(manifest, directory / 'output', roots=manifest.parent / 'roots.txt',
                             seed=seed)
    return config, run(config)


@pytest.fixture(scope='module')
def finished(tmp_path_factory):
    return run_in(tmp_path_factory.mktemp('pipeline'))


@pytest.mark.timeout(120)
def test_run_writes_every_output(finished):
    config, report = finished
    for key in OUTPUTS:
        assert config.output(key).exists(), key

    train_entries, test_entries = read_split(config.output('split'))
    assert len(train_entries) + len(test_entries) == 12
    assert report.total == len(test_entries)
    assert report.classes == ('culture', 'economic')
    assert report.accuracy > 0.5

    kernel = gram_matrix.read(config.output('kernel'))
    assert kernel.header == (3, True)
    assert len(kernel.names) == 12
    assert fst_archive.read(config.output('archive')).names() == list(kernel.names)

    predictions = read_predictions(config.output('predictions'))
    assert [name for name, _ in predictions] == [name for name, _ in test_entries]
    assert config.output('metrics').read_text(encoding='utf-8').startswith('class')


@pytest.mark.timeout(240)
def test_run_is_deterministic(finished, tmp_path):
    config, _ = finished
    again, _ = run_in(tmp_path)
    for key in OUTPUTS:
        assert again.output(key).read_bytes() == config.output(key).read_bytes(), key


def test_header_mismatch(finished):
    config, _ = finished
    kernel = gram_matrix.read(config.output('kernel'))
    model = ovr_model.read(config.output('model'))
    other = gram_matrix(kernel.names, kernel.values, 2, kernel.sigma, kernel.normalized)
    with pytest.raises(HeaderMismatchError):
        predict_split(other, config.output('split'), model)


def test_train_rejects_unknown_documents(finished, tmp_path):
    config, _ = finished
    kernel = gram_matrix.read(config.output('kernel'))
    split = tmp_path / 'split.tsv'
    split.write_text('nowhere\tculture\ttrain\n', encoding='utf-8')
    with pytest.raises(FormatError):
        train(kernel, split)


def test_train_rejects_unlabelled_documents(finished, tmp_path):
    config, _ = finished
    kernel = gram_matrix.read(config.output('kernel'))
    split = tmp_path / 'split.tsv'
    split.write_text(f'{kernel.names[0]}\tculture\ttrain\n{kernel.names[1]}\t\ttrain\n', encoding='utf-8')
    with pytest.raises(FormatError, match='no label'):
        train(kernel, split)


def test_evaluate_predictions(finished):
    config, _ = finished
    _, test_entries = read_split(config.output('split'))
    report = evaluate_predictions(test_entries, config.output('split'))
    assert report.accuracy == 1.0
    with pytest.raises(FormatError):
        evaluate_predictions([('nowhere', 'culture')], config.output('split'))


def test_stem_words():
    analyses = stem_words(compile_model(), [bw('mdrsp'), bw('bk')])
    assert [a.stem for a in analyses] == [bw('drs'), bw('bk')]
    assert analyses[1].candidates == ()
    fields = format_analysis(analyses[0]).split('\t')
    assert fields[1] == bw('drs')
    assert bw('drs') in fields[2].split(',')
    assert float(fields[3]) == analyses[0].score


@pytest.mark.parametrize('setting', [
    {'order': 0},
    {'ratio': 1.0},
    {'ratio': 0.0},
    {'C': 0.0},
    {'tol': -1.0},
])
def test_config_validation(setting, tmp_path):
    with pytest.raises(ValueError):
        pipeline_config(tmp_path / 'data.list', tmp_path, **setting)


@pytest.mark.timeout(600)
def test_six_classes_are_separated(tmp_path):
    manifest = generate_corpus(tmp_path / 'corpus', classes=6, docs_per_class=40, seed=0)
    report = run(pipeline_config(manifest, tmp_path / 'output', roots=manifest.parent / 'roots.txt'))
    assert report.total == 48
    assert report.accuracy == 1.0
    assert all(r.f1 == 1.0 for r in report.rows)


@pytest.mark.timeout(300)
def test_stemming_brings_same_class_documents_closer(tmp_path):
    manifest = generate_corpus(tmp_path, classes=2, docs_per_class=6, roots_per_class=4,
                               words_per_doc=20, seed=3)
    model = compile_model(roots=tmp_path / 'roots.txt')
    docs = load_corpus(manifest)
    stemmed = kernel_matrix(convert(docs, model, frozenset()), 3)
    raw = kernel_matrix(convert(docs, model, frozenset(), stemming=False), 3)

    pairs = [(a.id, b.id) for a, b in itertools.combinations(docs, 2) if a.label == b.label]
    closer = sum(1 for x, y in pairs
                 if kernel_distance(x, y, stemmed.entry) < kernel_distance(x, y, raw.entry))
    assert closer >= 0.9 * len(pairs)
