# -*- coding: utf-8 -*-
# Copyright (c) 2024 wazn.core contributors
# See LICENSE.rst for details.

"""
Seeded synthetic Arabic corpora for demonstrations and end-to-end checks.

Every class draws its words from its own set of triliteral roots; a word is
``prefix + pattern(root) + suffix`` with the prefix, measure and suffix
drawn from the stemmer inventories. Root letters are restricted to letters
that appear in no affix and no fixed pattern position.
"""

import logging
from collections import namedtuple
from pathlib import Path

import numpy as np

from wazn.core.stemmer import CATEGORIES, stemmer_config
from wazn.core.util import atomic_write


logger = logging.getLogger(__name__)

#: Category names used for the first six classes.
CLASS_NAMES = ('culture', 'economic', 'general', 'politics', 'social', 'sport')

#: A generated word and how it was built.
sample = namedtuple('sample', ['word', 'root', 'prefix', 'pattern', 'suffix'])


class generator(object):
    """
    Draws roots and surface forms from a set of inventories.

    :param cfg: Inventories to draw from; the bundled ones by default.
    :type cfg: wazn.core.stemmer.stemmer_config
    :param seed: Seed of the random generator.
    """
    def __init__(self, cfg=None, seed=0):
        self.alphabet, self.patterns, self.affixes = (cfg or stemmer_config.default()).load()
        self.rng = np.random.default_rng(seed)
        fixed = set(''.join(self.affixes.verb_prefixes + self.affixes.noun_prefixes + self.affixes.suffixes))
        for p in self.patterns:
            fixed.update(item for item in p.template if isinstance(item, str))
        self.pool = tuple(c for c in self.alphabet.letters if c not in fixed)
        self.measures = {c: [p for p in self.patterns if p.category == c and p.arity == 3]
                         for c in CATEGORIES}
        self.categories = [c for c in CATEGORIES if self.measures[c]]
        if len(self.pool) < 3 or not self.categories:
            raise ValueError('Inventories leave too few letters or measures to generate words')

    def _choice(self, items):
        return items[int(self.rng.integers(len(items)))]

    def roots(self, count, exclude=()):
        """
        ``count`` distinct roots of three distinct pool letters, none in
        ``exclude``.

        :rtype: list
        """
        taken = set(exclude)
        roots = []
        while len(roots) < count:
            letters = self.rng.choice(len(self.pool), size=3, replace=False)
            root = ''.join(self.pool[int(k)] for k in letters)
            if root not in taken:
                taken.add(root)
                roots.append(root)
        return roots

    def word(self, root):
        """
        One surface form of ``root``.

        :rtype: sample
        """
        category = self._choice(self.categories)
        p = self._choice(self.measures[category])
        prefix = self._choice(('',) + self.affixes.prefixes(category))
        suffix = self._choice(('',) + self.affixes.suffixes)
        return sample(prefix + p.instantiate(root) + suffix, root, prefix, p, suffix)

    def words(self, count, roots=None):
        """
        ``count`` samples, each from a root of ``roots`` (fresh roots when
        omitted).
        """
        roots = roots or self.roots(max(1, count // 4))
        return [self.word(self._choice(roots)) for _ in range(count)]


def generate_corpus(directory, classes=6, docs_per_class=40, roots_per_class=8,
                    words_per_doc=20, seed=0, cfg=None):
    """
    Write a labelled corpus: one text file per document, a ``data.list``
    manifest (``path<TAB>label``) and the ``roots.txt`` of every class.

    :returns: Path of the manifest.
    :rtype: pathlib.Path
    """
    directory = Path(directory)
    (directory / 'docs').mkdir(parents=True, exist_ok=True)
    gen = generator(cfg, seed)
    labels = [CLASS_NAMES[k] if k < len(CLASS_NAMES) else f'class{k + 1}' for k in range(classes)]

    vocabulary, taken = {}, set()
    for label in labels:
        vocabulary[label] = gen.roots(roots_per_class, taken)
        taken.update(vocabulary[label])

    manifest = []
    for label in labels:
        for k in range(docs_per_class):
            words = [s.word for s in gen.words(words_per_doc, vocabulary[label])]
            name = f'{label}_{k:03d}.txt'
            with atomic_write(directory / 'docs' / name) as fp:
                for start in range(0, len(words), 10):
                    fp.write(' '.join(words[start:start + 10]) + '\n')
            manifest.append(f'docs/{name}\t{label}')

    with atomic_write(directory / 'roots.txt') as fp:
        fp.write(''.join(f'{r}\n' for label in labels for r in vocabulary[label]))
    path = directory / 'data.list'
    with atomic_write(path) as fp:
        fp.write(''.join(line + '\n' for line in manifest))
    logger.info(f'Generated {len(manifest)} documents in {len(labels)} classes under {directory}')
    return path
