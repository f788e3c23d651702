# -*- coding: utf-8 -*-
# Copyright (c) 2024 wazn.core contributors
# See LICENSE.rst for details.

"""
Bigram letter statistics of a root list, used to rank the candidate roots
a word decomposes into.

For a root :math:`c_1 c_2 c_3`:

.. math::

    Score(c_1 c_2 c_3) = P_1(c_2 \\mid c_1) \\times P_2(c_3 \\mid c_2)

where :math:`P_1` is estimated from the first two letters of every root and
:math:`P_2` from the last two. Longer stems multiply in one more
:math:`P_2` factor per extra letter.
"""

import logging

from wazn.core.alphabet import alphabet
from wazn.core.error import EmptyInventoryError, RootFormatError
from wazn.core.util import find_data_file, read_lines


logger = logging.getLogger(__name__)


class root_scorer(object):
    """
    Conditional bigram tables estimated from a list of triliteral roots.

    :param first: ``first[c1][c2]``: how many roots start with ``c1 c2``.
    :type first: dict
    :param second: ``second[c2][c3]``: how many roots end with ``c2 c3``.
    :type second: dict
    :param count: Number of training roots.
    :param smoothing: Add-one smoothing over ``letters``.
    :param letters: The alphabet smoothing ranges over.
    """
    def __init__(self, first, second, count, smoothing=False, letters=()):
        self.first = {c: dict(row) for c, row in first.items()}
        self.second = {c: dict(row) for c, row in second.items()}
        self.count = count
        self.smoothing = smoothing
        self.letters = tuple(letters)
        self._first_totals = {c: sum(row.values()) for c, row in self.first.items()}
        self._second_totals = {c: sum(row.values()) for c, row in self.second.items()}

    def _prob(self, table, totals, a, b):
        n = table.get(a, {}).get(b, 0)
        total = totals.get(a, 0)
        if self.smoothing:
            return (n + 1) / (total + len(self.letters))
        return n / total if total else 0.0

    def p1(self, c1, c2):
        """
        :math:`P_1(c_2 \\mid c_1)`
        """
        return self._prob(self.first, self._first_totals, c1, c2)

    def p2(self, c2, c3):
        """
        :math:`P_2(c_3 \\mid c_2)`
        """
        return self._prob(self.second, self._second_totals, c2, c3)

    def p1_row(self, c1):
        return {c: self.p1(c1, c) for c in self._support(self.first, c1)}

    def p2_row(self, c2):
        return {c: self.p2(c2, c) for c in self._support(self.second, c2)}

    def _support(self, table, a):
        return self.letters if self.smoothing else tuple(sorted(table.get(a, {})))

    def conditioning_letters(self):
        """
        Letters with at least one observation as ``c1`` in :math:`P_1` and as
        ``c2`` in :math:`P_2`, respectively.
        """
        return tuple(sorted(self.first)), tuple(sorted(self.second))

    def to_dict(self):
        return {
            'first': self.first,
            'second': self.second,
            'count': self.count,
            'smoothing': self.smoothing,
            'letters': ''.join(self.letters),
        }

    @classmethod
    def from_dict(cls, d):
        return cls(d['first'], d['second'], d['count'], d['smoothing'], d['letters'])

    def __repr__(self):
        return f'root_scorer({self.count} roots, smoothing={self.smoothing})'


def train_scorer(roots, smoothing=False, letters=None):
    """
    Estimate the bigram tables from ``roots``.

    :param roots: Triliteral roots, each exactly three canonical letters.
    :param smoothing: Add-one smoothing over the canonical alphabet.
    :param letters: Canonical letters; the bundled alphabet by default.
    :type letters: str or sequence
    :raises wazn.core.error.EmptyInventoryError: ``roots`` is empty.
    :raises wazn.core.error.RootFormatError: A root is not made of three
        canonical letters.
    :rtype: root_scorer
    """
    roots = list(roots)
    if not roots:
        raise EmptyInventoryError('Cannot train a scorer on an empty root list')
    letters = tuple(alphabet.default().letters if letters is None else letters)
    canonical = set(letters)

    first, second = {}, {}
    for root in roots:
        if len(root) != 3 or not all(c in canonical for c in root):
            raise RootFormatError(f'Malformed root: {root!r}')
        c1, c2, c3 = root
        row = first.setdefault(c1, {})
        row[c2] = row.get(c2, 0) + 1
        row = second.setdefault(c2, {})
        row[c3] = row.get(c3, 0) + 1

    logger.debug(f'Trained scorer on {len(roots)} roots')
    return root_scorer(first, second, len(roots), smoothing, letters)


def score(sc, stem):
    """
    :math:`P_1(c_2 \\mid c_1) \\times \\prod_{k \\ge 2} P_2(c_{k+1} \\mid c_k)`

    :raises wazn.core.error.RootFormatError: ``stem`` is shorter than three
        letters.
    :rtype: float
    """
    if len(stem) < 3:
        raise RootFormatError(f'Cannot score a stem shorter than 3 letters: {stem!r}')
    s = sc.p1(stem[0], stem[1])
    for k in range(1, len(stem) - 1):
        if s == 0.0:
            break
        s *= sc.p2(stem[k], stem[k + 1])
    return s


def load_roots(path, letters):
    """
    Read a root list (one root per line) and normalize every entry.

    :type letters: wazn.core.alphabet.alphabet
    :rtype: list
    """
    return [letters.normalize(line) for line in read_lines(path)]


def default_roots(letters=None):
    """
    The bundled root list.
    """
    return load_roots(find_data_file('roots.txt'), letters or alphabet.default())
