# -*- coding: utf-8 -*-
# Copyright (c) 2024 wazn.core contributors
# See LICENSE.rst for details.

"""
From raw documents to linear machines over stems: tokenization and
normalization, stopword removal, stemming, and the train/test split.
"""

import logging
import unicodedata
from collections import Counter, namedtuple
from pathlib import Path

from sklearn.model_selection import train_test_split

from wazn.core import semiring as sr
from wazn.core.alphabet import BOUNDARY
from wazn.core.error import DuplicateNameError, FormatError
from wazn.core.stemmer import stem
from wazn.core.threadpool import threadpool
from wazn.core.util import atomic_write, find_data_file, read_lines
from wazn.core.wfst import epsilon_machine, linear_from_string


logger = logging.getLogger(__name__)

#: A corpus entry. ``label`` is ``None`` for unlabelled text.
document = namedtuple('document', ['id', 'text', 'label'])

TRAIN = 'train'
TEST = 'test'


def _is_separator(c):
    # format characters (ZWNJ, ZWJ, letter marks) stay inside the word
    category = unicodedata.category(c)
    return c.isspace() or category[0] in 'PSZ' or category in ('Cc', 'Cs', 'Co', 'Cn')


def tokenize(text):
    """
    Split on whitespace, punctuation and symbol codepoints.

    :rtype: list
    """
    return ''.join(' ' if _is_separator(c) else c for c in text).split()


def load_stopwords(path, letters):
    """
    Read a stopword list (one word per line), normalized.

    :rtype: frozenset
    """
    return frozenset(w for w in (letters.normalize(line) for line in read_lines(path)) if w)


def default_stopwords(letters):
    return load_stopwords(find_data_file('stopwords.txt'), letters)


def normalize(d, stopwords, letters):
    """
    Tokens of ``d`` folded into the canonical alphabet: diacritics and every
    non-letter codepoint removed, variants mapped, empty tokens and stopwords
    dropped.

    :param d: A document, or plain text.
    :type d: document or str
    :param stopwords: Normalized stopwords.
    :type letters: wazn.core.alphabet.alphabet
    :rtype: list
    """
    text = d.text if isinstance(d, document) else d
    tokens = []
    for raw in tokenize(text):
        token = letters.normalize(raw)
        if token and token not in stopwords:
            tokens.append(token)
    return tokens


def doc_to_fst(tokens, stemmer=None, sc=None, boundary=True, stemming=True, symbols=None, stems=None):
    """
    Linear acceptor spelling the best stem of every token, in order, with
    :py:data:`~wazn.core.alphabet.BOUNDARY` between consecutive stems.

    :param stemmer: Compiled stemmer (unused when ``stemming`` is off).
    :param sc: Root scorer.
    :type sc: wazn.core.scorer.root_scorer
    :param boundary: Separate words with the boundary symbol; when off the
        stems are concatenated directly.
    :param stemming: When off, tokens are used as they are.
    :param symbols: Symbol table attached to the result; defaults to the
        stemmer's.
    :param stems: Optional ``token -> stem`` cache, consulted and filled.
    :returns: :py:func:`~wazn.core.wfst.epsilon_machine` when ``tokens`` is
        empty.
    """
    if symbols is None and stemmer is not None:
        symbols = stemmer.isymbols
    if not tokens:
        return epsilon_machine(sr.real, symbols, symbols)

    stems = {} if stems is None else stems
    sequence = []
    for k, token in enumerate(tokens):
        if stemming:
            if token not in stems:
                stems[token] = stem(stemmer, sc, token)
            s = stems[token]
        else:
            s = token
        if boundary and k > 0:
            sequence.append(BOUNDARY)
        sequence.extend(s)
    return linear_from_string(sequence, sr.real, symbols)


def read_manifest(path):
    """
    Parse a ``path<TAB>label`` corpus manifest. Relative paths are resolved
    against the manifest's directory; the label is optional.

    :returns: ``(path, label)`` pairs in manifest order.
    :raises wazn.core.error.FormatError: A line has more than two fields.
    """
    path = Path(path)
    entries = []
    with open(path, 'r', encoding='utf-8') as fp:
        for lineno, line in enumerate(fp, 1):
            line = line.rstrip('\n')
            if not line.strip() or line.startswith('#'):
                continue
            fields = line.split('\t')
            if len(fields) > 2:
                raise FormatError(f'{path}:{lineno}: expected path<TAB>label')
            doc = Path(fields[0])
            if not doc.is_absolute():
                doc = path.parent / doc
            entries.append((doc, fields[1] if len(fields) == 2 else None))
    return entries


def load_corpus(manifest):
    """
    Read every document named by ``manifest``. A document's id is its file
    name without extension.

    :raises wazn.core.error.DuplicateNameError: Two files share an id.
    :raises OSError: A listed file cannot be read.
    :rtype: list of :py:data:`document`
    """
    docs, seen = [], set()
    for path, label in read_manifest(manifest):
        doc_id = path.stem
        if doc_id in seen:
            raise DuplicateNameError(f'Duplicate document name {doc_id!r} ({path})')
        seen.add(doc_id)
        with open(path, 'r', encoding='utf-8') as fp:
            docs.append(document(doc_id, fp.read(), label))
    logger.info(f'Loaded {len(docs)} documents from {manifest}')
    return docs


def convert(docs, model, stopwords, boundary=True, stemming=True, num_threads=None):
    """
    Normalize, stem and encode every document. Distinct tokens are stemmed
    once, in parallel; the result follows the order of ``docs``.

    :type model: wazn.core.stemmer.stemming_model
    :returns: ``(id, wfst)`` pairs.
    :rtype: list
    """
    token_lists = [normalize(d, stopwords, model.alphabet) for d in docs]
    stems = {}
    if stemming:
        vocabulary = sorted({t for tokens in token_lists for t in tokens})
        with threadpool(num_threads) as pool:
            analyses = pool.map(lambda t: stem(model.stemmer, model.scorer, t), vocabulary)
        stems = dict(zip(vocabulary, analyses))
        unstemmed = sum(1 for t in vocabulary if stems[t] == t)
        logger.info(f'Stemmed {len(vocabulary)} distinct tokens, {unstemmed} left unstemmed')

    return [(d.id, doc_to_fst(tokens, model.stemmer, model.scorer, boundary, stemming,
                              model.symbols, stems))
            for d, tokens in zip(docs, token_lists)]


def split(docs, ratio=0.8, seed=0):
    """
    Seeded split into training and test documents, stratified by label when
    every label has at least two documents.

    :param ratio: Share of documents used for training, in ``(0, 1)``.
    :returns: ``(train, test)`` lists, each in corpus order.
    :raises wazn.core.error.FormatError: A document has no label.
    """
    if not 0 < ratio < 1:
        raise ValueError(f'Split ratio must be in (0, 1), got {ratio}')
    for d in docs:
        if not d.label:
            raise FormatError(f'Document {d.id!r} has no label and cannot be split')
    labels = [d.label for d in docs]
    counts = Counter(labels)
    stratify = labels if len(counts) > 1 and min(counts.values()) >= 2 else None
    indices = list(range(len(docs)))
    train_idx, test_idx = train_test_split(indices, train_size=ratio, random_state=seed,
                                           shuffle=True, stratify=stratify)
    return ([docs[i] for i in sorted(train_idx)],
            [docs[i] for i in sorted(test_idx)])


def write_split(path, train, test):
    """
    Record a split as ``id<TAB>label<TAB>train|test`` lines, training
    documents first.
    """
    with atomic_write(path) as fp:
        for part, docs in ((TRAIN, train), (TEST, test)):
            for d in docs:
                fp.write(f'{d.id}\t{d.label or ""}\t{part}\n')


def read_split(path):
    """
    :returns: ``(train, test)``, each a list of ``(id, label)`` pairs.
    :raises wazn.core.error.FormatError: Malformed line.
    """
    parts = {TRAIN: [], TEST: []}
    with open(path, 'r', encoding='utf-8') as fp:
        for lineno, line in enumerate(fp, 1):
            line = line.rstrip('\n')
            if not line:
                continue
            fields = line.split('\t')
            if len(fields) != 3 or fields[2] not in parts:
                raise FormatError(f'{path}:{lineno}: expected id<TAB>label<TAB>train|test')
            parts[fields[2]].append((fields[0], fields[1] or None))
    return parts[TRAIN], parts[TEST]
