# -*- coding: utf-8 -*-
# Copyright (c) 2024 wazn.core contributors
# See LICENSE.rst for details.

"""
The classification pipeline, one function per step: compile the stemming
model, stem words, encode a corpus into an archive, split it, compute the
kernel, train, predict and evaluate. :py:func:`run` chains them all.
"""

import logging
from pathlib import Path

from wazn.core.archive import fst_archive
from wazn.core.corpus import (default_stopwords, load_corpus, load_stopwords,
                              read_split, split, write_split, convert)
from wazn.core.error import FormatError, HeaderMismatchError
from wazn.core.kernel import check_sigma, kernel_matrix
from wazn.core.metrics import evaluate, format_report
from wazn.core.scorer import default_roots, load_roots, train_scorer
from wazn.core.stemmer import stemmer_config, stemming_model
from wazn.core.svm import ovr_train, predict, write_predictions
from wazn.core.util import atomic_write


logger = logging.getLogger(__name__)

#: File names written by :py:func:`run` inside the output directory.
OUTPUTS = {
    'stemmer': 'model.stem',
    'archive': 'data.far',
    'split': 'split.tsv',
    'kernel': 'data.kar',
    'model': 'model.svm',
    'predictions': 'predictions.tsv',
    'metrics': 'metrics.txt',
}


class pipeline_config(object):
    """
    Settings of a full pipeline run.

    :param manifest: Corpus manifest (``path<TAB>label`` lines).
    :param output_dir: Directory receiving every output file.
    :param stemmer: Stemmer inventories; the bundled ones by default.
    :type stemmer: wazn.core.stemmer.stemmer_config
    :param roots: Root list the scorer is trained on; the bundled one by
        default.
    :param stopwords: Stopword list; the bundled one by default.
    :param order: n-gram order, at least 1.
    :param sigma: Alphabet size declared for the kernel.
    :param normalize: Cosine-normalize the kernel.
    :param C: SVM box constraint, positive.
    :param tol: SMO stopping tolerance, positive.
    :param seed: Seed of the train/test split.
    :param ratio: Share of training documents, in ``(0, 1)``.
    :param stemming: Encode stems (``True``) or raw normalized tokens.
    :param boundary: Separate words with the boundary symbol.
    :param smoothing: Add-one smoothing of the root scorer.
    :raises ValueError: A setting is out of range.
    """
    def __init__(self, manifest, output_dir, stemmer=None, roots=None, stopwords=None,
                 order=3, sigma=29, normalize=True, C=1.0, tol=1e-3, seed=0, ratio=0.8,
                 stemming=True, boundary=True, smoothing=False):
        if order < 1:
            raise ValueError(f'n-gram order must be at least 1, got {order}')
        if not 0 < ratio < 1:
            raise ValueError(f'Split ratio must be in (0, 1), got {ratio}')
        if C <= 0:
            raise ValueError(f'C must be positive, got {C}')
        if tol <= 0:
            raise ValueError(f'tol must be positive, got {tol}')
        self.manifest = Path(manifest)
        self.output_dir = Path(output_dir)
        self.stemmer = stemmer or stemmer_config.default()
        self.roots = roots
        self.stopwords = stopwords
        self.order = order
        self.sigma = sigma
        self.normalize = normalize
        self.C = C
        self.tol = tol
        self.seed = seed
        self.ratio = ratio
        self.stemming = stemming
        self.boundary = boundary
        self.smoothing = smoothing

    def output(self, key):
        return self.output_dir / OUTPUTS[key]


def compile_model(cfg=None, roots=None, smoothing=False):
    """
    Compile the stemmer and train its scorer.

    :param roots: Root list file, or a list of roots; the bundled list by
        default.
    :rtype: wazn.core.stemmer.stemming_model
    """
    cfg = cfg or stemmer_config.default()
    letters = cfg.load()[0]
    if roots is None:
        roots = default_roots(letters)
    elif isinstance(roots, (str, Path)):
        roots = load_roots(roots, letters)
    scorer = train_scorer(roots, smoothing, letters.letters)
    return stemming_model.build(cfg, scorer)


def load_model(path=None):
    """
    Read a compiled stemming model, or compile the default one.
    """
    return stemming_model.load(path) if path else compile_model()


def format_analysis(a):
    """
    ``word<TAB>stem<TAB>candidate,list<TAB>score``
    """
    return f'{a.word}\t{a.stem}\t{",".join(a.candidates)}\t{a.score!r}'


def stem_words(model, words):
    """
    :rtype: list of :py:data:`wazn.core.stemmer.analysis`
    """
    return [model.analyze(w) for w in words]


def build_archive(manifest, model, stopwords=None, boundary=True, stemming=True):
    """
    Encode every document of a manifest, in manifest order.

    :param stopwords: Stopword file; the bundled list by default.
    :rtype: wazn.core.archive.fst_archive
    """
    docs = load_corpus(manifest)
    words = load_stopwords(stopwords, model.alphabet) if stopwords else default_stopwords(model.alphabet)
    return fst_archive(convert(docs, model, words, boundary, stemming))


def build_kernel(archive, order=3, sigma=29, normalize=True, symbols=None):
    """
    Gram matrix of an archive.

    :param symbols: Symbol table used to check ``sigma``; taken from the
        archive's machines when omitted.
    :raises wazn.core.error.AlphabetSizeError: A symbol id exceeds ``sigma``.
    :rtype: wazn.core.kernel.gram_matrix
    """
    entries = list(archive)
    if symbols is None:
        symbols = next((t.isymbols for _, t in entries if t.isymbols is not None), None)
    if symbols is not None:
        check_sigma(entries, sigma, symbols)
    return kernel_matrix(entries, order, normalize, sigma)


def make_split(manifest, path, ratio=0.8, seed=0):
    """
    Split a corpus and record the split.

    :returns: ``(train, test)`` documents.
    """
    train, test = split(load_corpus(manifest), ratio, seed)
    write_split(path, train, test)
    logger.info(f'Split {len(train) + len(test)} documents: {len(train)} train, {len(test)} test')
    return train, test


def _known(kernel, entries, what):
    for name, _ in entries:
        if name not in kernel.names:
            raise FormatError(f'{what} document {name!r} is not in the kernel archive')


def train(kernel, split_path, C=1.0, tol=1e-3):
    """
    One-vs-rest model on the training part of a split.

    :type kernel: wazn.core.kernel.gram_matrix
    :raises wazn.core.error.FormatError: A training document is unknown to
        the kernel or has no label.
    :rtype: wazn.core.svm.ovr_model
    """
    entries, _ = read_split(split_path)
    _known(kernel, entries, 'Training')
    for name, label in entries:
        if label is None:
            raise FormatError(f'Training document {name!r} has no label')
    names = [name for name, _ in entries]
    K = kernel.submatrix(names, names)
    return ovr_train(K, [label for _, label in entries], C, tol, names=names,
                     order=kernel.order, normalized=kernel.normalized)


def predict_split(kernel, split_path, model):
    """
    Predict every test document of a split.

    :raises wazn.core.error.HeaderMismatchError: The kernel and model were
        built with different settings.
    :returns: ``(name, prediction)`` pairs in split order.
    """
    if kernel.header != model.header:
        raise HeaderMismatchError(
            f'Kernel (order={kernel.order}, normalized={int(kernel.normalized)}) does not match '
            f'model (order={model.order}, normalized={int(bool(model.normalized))})')
    _, entries = read_split(split_path)
    _known(kernel, entries, 'Test')
    names = [name for name, _ in entries]
    _known(kernel, [(name, None) for name in model.names], 'Training')
    rows = kernel.submatrix(names, model.names) if names else []
    return [(name, predict(model, row, kernel.header)) for name, row in zip(names, rows)]


def evaluate_predictions(predictions, split_path):
    """
    Score predictions against the labels recorded in a split.

    :param predictions: ``(name, label)`` pairs.
    :rtype: wazn.core.metrics.metrics_report
    """
    train_entries, test_entries = read_split(split_path)
    gold = dict(train_entries + test_entries)
    missing = [name for name, _ in predictions if name not in gold]
    if missing:
        raise FormatError(f'No reference label for {missing[0]!r}')
    return evaluate([label for _, label in predictions], [gold[name] for name, _ in predictions])


def run(config):
    """
    Every step, from corpus manifest to metrics table, writing each
    intermediate file into ``config.output_dir``.

    :type config: pipeline_config
    :rtype: wazn.core.metrics.metrics_report
    """
    config.output_dir.mkdir(parents=True, exist_ok=True)

    model = compile_model(config.stemmer, config.roots, config.smoothing)
    model.save(config.output('stemmer'))

    archive = build_archive(config.manifest, model, config.stopwords, config.boundary, config.stemming)
    archive.write(config.output('archive'))

    make_split(config.manifest, config.output('split'), config.ratio, config.seed)

    kernel = build_kernel(archive, config.order, config.sigma, config.normalize, model.symbols)
    kernel.write(config.output('kernel'))

    svm = train(kernel, config.output('split'), config.C, config.tol)
    svm.write(config.output('model'))

    predictions = predict_split(kernel, config.output('split'), svm)
    write_predictions(config.output('predictions'), predictions)

    report = evaluate_predictions([(name, p.label) for name, p in predictions], config.output('split'))
    with atomic_write(config.output('metrics')) as fp:
        fp.write(format_report(report))
    logger.info(f'Accuracy {report.accuracy:.4f} on {report.total} test documents')
    return report

