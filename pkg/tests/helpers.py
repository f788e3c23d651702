# -*- coding: utf-8 -*-
# Copyright (c) 2024 wazn.core contributors
# See LICENSE.rst for details.

"""
Test helpers.
"""

import itertools
from pathlib import Path

import numpy as np

from wazn.core import semiring as sr
from wazn.core.alphabet import from_buckwalter
from wazn.core.symbols import EPSILON
from wazn.core.wfst import builder, linear_from_string


def get_reference_file(fname):
    """
    Get absolute path for ``fname``.

    :param fname: Filename.
    :type fname: str or pathlib.Path
    :rtype: str
    """
    return str(Path(__file__).resolve().parent.joinpath('reference', fname))


def bw(text):
    """
    Arabic text from its Buckwalter transliteration.
    """
    return from_buckwalter(text)


def random_machine(rng, semiring=sr.real, max_states=6, max_arcs=10, alphabet='abc', eps=0.3):
    """
    A random acyclic machine: arcs only go from lower to higher state ids,
    labels are drawn from ``alphabet`` or are epsilon with probability
    ``eps``, and weights are small integers so sums are exact.
    """
    b = builder(semiring)
    n = int(rng.integers(2, max_states + 1))
    b.add_states(n)
    b.set_initial(0, float(rng.integers(1, 3)) if semiring is sr.real else float(rng.integers(0, 2)))
    for q in range(1, n):
        if rng.random() < 0.5:
            b.set_final(q, float(rng.integers(1, 3)) if semiring is sr.real else float(rng.integers(0, 3)))
    b.set_final(n - 1)

    def label():
        return EPSILON if rng.random() < eps else alphabet[int(rng.integers(len(alphabet)))]

    for _ in range(int(rng.integers(1, max_arcs + 1))):
        src = int(rng.integers(0, n - 1))
        dst = int(rng.integers(src + 1, n))
        w = float(rng.integers(1, 4)) if semiring is sr.real else float(rng.integers(0, 4))
        b.add_arc(src, label(), label(), w, dst)
    return b.build()


def pair_weights(t):
    """
    Brute-force :math:`[\\![T]\\!]`: depth-first walk over every accepting
    path of an acyclic machine, summing totals per ``(input, output)`` pair.

    :rtype: dict
    """
    K = t.semiring
    weights = {}

    def walk(q, w, x, y):
        if q in t.final:
            key = (x, y)
            weights[key] = K.plus(weights.get(key, K.zero), K.times(w, t.final[q]))
        for a in t.arcs(q):
            walk(a.dst, K.times(w, a.weight),
                 x + ((a.ilabel,) if a.ilabel != EPSILON else ()),
                 y + ((a.olabel,) if a.olabel != EPSILON else ()))

    for q, lam in t.initial.items():
        walk(q, lam, (), ())
    return {k: w for k, w in weights.items() if w != K.zero}


def strings_up_to(alphabet, n):
    """
    Every string over ``alphabet`` of length at most ``n``, as tuples.
    """
    for k in range(n + 1):
        yield from itertools.product(alphabet, repeat=k)


def decompositions(word, patterns, affixes):
    """
    Brute-force stem candidates of ``word``: every split into
    ``prefix + middle + suffix`` with a prefix and suffix from the
    inventories (or empty) and a pattern of the prefix's category matching
    the middle. The pattern is read back to its root.

    :rtype: set
    """
    found = set()
    for p in patterns:
        prefixes = ('',) + affixes.prefixes(p.category)
        for prefix in prefixes:
            if not word.startswith(prefix):
                continue
            for suffix in ('',) + affixes.suffixes:
                if not word.endswith(suffix) or len(prefix) + len(suffix) > len(word):
                    continue
                middle = word[len(prefix):len(word) - len(suffix)]
                root = p.matches(middle)
                if root is not None:
                    found.add(root)
    return found


def linear_documents(rng, count, alphabet='abcd', max_len=8):
    """
    ``count`` named linear acceptors over ``alphabet``, with their strings.
    """
    docs = []
    for k in range(count):
        s = ''.join(alphabet[int(i)] for i in rng.integers(len(alphabet), size=int(rng.integers(1, max_len + 1))))
        docs.append((f'doc{k:02d}', s, linear_from_string(s)))
    return docs


def sliding_counts(s, n):
    """
    n-gram counts by sliding a window over ``s``.
    """
    counts = {}
    for i in range(len(s) - n + 1):
        g = tuple(s[i:i + n])
        counts[g] = counts.get(g, 0) + 1
    return counts


def separable_gram(per_class=10):
    """
    Normalized linear-kernel Gram matrix of two groups of documents with
    disjoint vocabularies, and their ``+1``/``-1`` labels.
    """
    rng = np.random.default_rng(7)
    X = np.zeros((2 * per_class, 8))
    X[:per_class, :4] = rng.integers(1, 4, size=(per_class, 4))
    X[per_class:, 4:] = rng.integers(1, 4, size=(per_class, 4))
    K = X @ X.T
    d = np.sqrt(np.diag(K))
    return K / np.outer(d, d), [1] * per_class + [-1] * per_class
