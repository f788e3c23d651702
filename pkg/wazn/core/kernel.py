# -*- coding: utf-8 -*-
# Copyright (c) 2024 wazn.core contributors
# See LICENSE.rst for details.

"""
n-gram rational kernels between acyclic machines.

:math:`K_n(x, y) = \\sum_z c_x(z)\\, c_y(z)` where :math:`c_x(z)` is the
expected number of occurrences of the n-gram :math:`z` along the accepting
paths of :math:`x`. n-grams never span the word boundary symbol.

The same value is the total weight of
:math:`x \\circ T \\circ T^{-1} \\circ y` for the counting transducer
:math:`T` of :py:func:`counting_transducer`.
"""

import logging
import math

import numpy as np

from wazn.core import semiring as sr
from wazn.core.alphabet import BOUNDARY
from wazn.core.error import AlphabetSizeError, FormatError, NotPositiveSemidefiniteError
from wazn.core.paths import backward, shortest_distance
from wazn.core.rational import compose
from wazn.core.symbols import EPSILON
from wazn.core.threadpool import threadpool
from wazn.core.util import atomic_write, perf_counter
from wazn.core.wfst import builder, invert


logger = logging.getLogger(__name__)

MAGIC = 'RKKAR1'


def ngram_counts(t, n, boundary=BOUNDARY):
    """
    Expected n-gram counts of an acyclic Real-weighted acceptor, read on the
    input tape.

    :param n: Order, at least 1.
    :param boundary: Symbol that resets the n-gram context and never occurs
        inside a counted n-gram; ``None`` disables the reset.
    :raises wazn.core.error.CyclicMachineError: ``t`` is cyclic.
    :returns: ``{ngram tuple: count}`` with zero counts omitted.
    :rtype: dict
    """
    if n < 1:
        raise ValueError(f'n-gram order must be at least 1, got {n}')
    assert t.semiring is sr.real, 'n-gram counts need the real semiring'
    order = t.topological_order()
    beta = backward(t)

    # partial[q]: {context: weight of prefixes ending in q with that context}
    partial = [dict() for _ in t.states]
    for q, lam in t.initial.items():
        partial[q][()] = lam
    counts = {}

    for q in order:
        for context, w in partial[q].items():
            for a in t.arcs(q):
                reach = w * a.weight
                if reach == 0.0:
                    continue
                label = a.ilabel
                if label == EPSILON:
                    nxt = context
                elif label == boundary:
                    nxt = ()
                else:
                    gram = context + (label,)
                    if len(gram) == n:
                        tail = beta[a.dst]
                        if tail != 0.0:
                            counts[gram] = counts.get(gram, 0.0) + reach * tail
                        nxt = gram[1:]
                    else:
                        nxt = gram
                bucket = partial[a.dst]
                bucket[nxt] = bucket.get(nxt, 0.0) + reach
    return counts


def dot(cx, cy):
    """
    :math:`\\sum_z c_x(z)\\, c_y(z)`, summed in sorted n-gram order so that
    ``dot(a, b) == dot(b, a)`` exactly.
    """
    shared = sorted(cx.keys() & cy.keys())
    return math.fsum(cx[z] * cy[z] for z in shared)


def ngram_kernel(x, y, n, boundary=BOUNDARY):
    """
    :math:`K_n(x, y)`

    :raises wazn.core.error.CyclicMachineError: Either machine is cyclic.
    """
    return dot(ngram_counts(x, n, boundary), ngram_counts(y, n, boundary))


def counting_transducer(letters, n, boundary=BOUNDARY):
    """
    The n-gram counting transducer over ``letters``: it skips any prefix,
    copies one n-gram of non-boundary letters, then skips any suffix. The
    number of paths mapping :math:`x` to :math:`z` is the number of
    occurrences of :math:`z` in :math:`x`.
    """
    letters = sorted(set(letters) - {EPSILON})
    inner = [c for c in letters if c != boundary]
    b = builder(sr.real)
    states = b.add_states(n + 1)
    b.set_initial(states[0])
    b.set_final(states[n])
    for c in letters:
        b.add_arc(states[0], c, EPSILON, dst=states[0])
    for k in range(n):
        for c in inner:
            b.add_arc(states[k], c, c, dst=states[k + 1])
    for c in letters:
        b.add_arc(states[n], c, EPSILON, dst=states[n])
    return b.build()


def ngram_kernel_by_composition(x, y, n, boundary=BOUNDARY):
    """
    :math:`K_n(x, y)` as the total weight of
    :math:`(x \\circ T) \\circ (y \\circ T)^{-1}`.
    """
    letters = {a.ilabel for t in (x, y) for a in t.arcs()}
    T = counting_transducer(letters, n, boundary)
    xs = compose(x, T)
    ys = compose(y, T)
    return shortest_distance(compose(xs, invert(ys)))


class gram_matrix(object):
    """
    A dense, symmetric kernel matrix over named documents.

    :param names: Document names, in row order.
    :param values: ``N x N`` array.
    :param order: n-gram order.
    :param sigma: Alphabet size the matrix was computed for.
    :param normalized: Whether entries are cosine-normalized.
    """
    def __init__(self, names, values, order, sigma, normalized):
        self.names = tuple(names)
        self.values = np.asarray(values, dtype=float)
        self.order = order
        self.sigma = sigma
        self.normalized = bool(normalized)
        self._index = {name: i for i, name in enumerate(self.names)}
        assert self.values.shape == (len(self.names), len(self.names))

    @property
    def header(self):
        """
        ``(order, normalized)``, compared against trained models.
        """
        return (self.order, self.normalized)

    def index(self, name):
        return self._index[name]

    def entry(self, x, y):
        """
        :math:`K(x, y)` by document name.
        """
        return float(self.values[self._index[x], self._index[y]])

    def submatrix(self, rows, cols):
        """
        Block of the matrix selected by row and column document names.

        :rtype: numpy.ndarray
        """
        r = [self._index[name] for name in rows]
        c = [self._index[name] for name in cols]
        return self.values[np.ix_(r, c)]

    def __len__(self):
        return len(self.names)

    def dumps(self):
        """
        ``RKKAR1`` header, the name count and names, then the lower triangle
        one row per line at 17 significant digits.

        :rtype: str
        """
        lines = [f'{MAGIC} order={self.order} sigma={self.sigma} normalized={int(self.normalized)}',
                 str(len(self.names))]
        for name in self.names:
            if '\n' in name or not name:
                raise FormatError(f'Document name {name!r} cannot be written')
            lines.append(name)
        for i in range(len(self.names)):
            lines.append(' '.join('%.17g' % self.values[i, j] for j in range(i + 1)))
        return ''.join(line + '\n' for line in lines)

    @classmethod
    def loads(cls, text):
        """
        :raises wazn.core.error.FormatError: Bad header, name list or matrix
            row.
        """
        lines = text.split('\n')
        fields = lines[0].split(' ') if lines else []
        if not fields or fields[0] != MAGIC:
            raise FormatError('Not a kernel archive (bad header)')
        try:
            settings = dict(f.split('=', 1) for f in fields[1:])
            order, sigma = int(settings['order']), int(settings['sigma'])
            normalized = settings['normalized'] == '1'
            count = int(lines[1])
        except (KeyError, ValueError, IndexError):
            raise FormatError(f'Bad kernel archive header: {lines[0]!r}')

        if len(lines) < 2 + 2 * count:
            raise FormatError('Truncated kernel archive')
        names = lines[2:2 + count]
        values = np.zeros((count, count))
        for i in range(count):
            row = lines[2 + count + i].split(' ')
            if len(row) != i + 1:
                raise FormatError(f'Kernel row {i} has {len(row)} entries, expected {i + 1}')
            try:
                for j, v in enumerate(row):
                    values[i, j] = values[j, i] = float(v)
            except ValueError:
                raise FormatError(f'Bad value in kernel row {i}')
        return cls(names, values, order, sigma, normalized)

    def write(self, path):
        with atomic_write(path) as fp:
            fp.write(self.dumps())

    @classmethod
    def read(cls, path):
        with open(path, 'r', encoding='utf-8') as fp:
            return cls.loads(fp.read())

    def __repr__(self):
        return f'gram_matrix({len(self)} documents, order={self.order}, normalized={self.normalized})'


def _entries(archive):
    return archive if isinstance(archive, list) else list(archive)


def check_sigma(archive, sigma, symbols):
    """
    Every label used by the archive's machines must have an id no greater
    than ``sigma`` in ``symbols``.

    :raises wazn.core.error.AlphabetSizeError: A label's id exceeds
        ``sigma``.
    """
    for name, t in _entries(archive):
        for a in t.arcs():
            for label in (a.ilabel, a.olabel):
                if label != EPSILON and symbols.find(label) > sigma:
                    raise AlphabetSizeError(
                        f'{name}: symbol {label!r} has id {symbols.find(label)}, above sigma={sigma}')


def _normalize(values):
    diagonal = np.diag(values).copy()
    out = np.zeros_like(values)
    for i in range(len(diagonal)):
        for j in range(len(diagonal)):
            if diagonal[i] > 0 and diagonal[j] > 0:
                out[i, j] = 1.0 if i == j else values[i, j] / math.sqrt(diagonal[i] * diagonal[j])
    return out


def kernel_matrix(archive, n, normalize=True, sigma=None, boundary=BOUNDARY, num_threads=None):
    """
    Pairwise :py:func:`ngram_kernel` over an archive. Count vectors are
    computed once per document; the lower triangle is filled in parallel,
    one row per task, then mirrored.

    :param archive: An :py:class:`~wazn.core.archive.fst_archive` or a list
        of ``(name, wfst)`` pairs.
    :param normalize: Cosine-normalize: :math:`K(x,y)/\\sqrt{K(x,x)K(y,y)}`,
        ``0`` when either diagonal entry is ``0``.
    :param sigma: Recorded in the result; defaults to the largest symbol id
        of the attached symbol tables (or ``0`` when none).
    :rtype: gram_matrix
    """
    entries = _entries(archive)
    names = [name for name, _ in entries]
    start = perf_counter()

    with threadpool(num_threads) as pool:
        counts = pool.map(lambda e: ngram_counts(e[1], n, boundary), entries)

        def row(i):
            return [dot(counts[i], counts[j]) for j in range(i + 1)]

        rows = pool.map(row, range(len(entries)))
    values = np.zeros((len(entries), len(entries)))
    for i, r in enumerate(rows):
        for j, v in enumerate(r):
            values[i, j] = values[j, i] = v
    if normalize:
        values = _normalize(values)

    if sigma is None:
        sigma = max((t.isymbols.max_id() for _, t in entries if t.isymbols is not None), default=0)
    logger.info(f'Computed {len(entries)}x{len(entries)} {n}-gram kernel in '
                f'{perf_counter() - start:.3f}s')
    return gram_matrix(names, values, n, sigma, normalize)


def kernel_rows(rows, cols, n, normalize=True, boundary=BOUNDARY):
    """
    Kernel values of the ``rows`` documents against the ``cols`` documents
    (e.g. unseen documents against a training set), normalized with each
    document's own self-kernel.

    :rtype: numpy.ndarray
    """
    cr = [ngram_counts(t, n, boundary) for _, t in _entries(rows)]
    cc = [ngram_counts(t, n, boundary) for _, t in _entries(cols)]
    values = np.array([[dot(a, b) for b in cc] for a in cr]).reshape(len(cr), len(cc))
    if normalize:
        dr = [dot(a, a) for a in cr]
        dc = [dot(b, b) for b in cc]
        for i in range(len(cr)):
            for j in range(len(cc)):
                values[i, j] = values[i, j] / math.sqrt(dr[i] * dc[j]) if dr[i] > 0 and dc[j] > 0 else 0.0
    return values


def kernel_distance(x, y, entry):
    """
    Kernel-induced distance
    :math:`\\sqrt{K(x,x) - 2K(x,y) + K(y,y)}`.

    :param entry: ``entry(a, b)`` returns :math:`K(a, b)`, e.g.
        :py:meth:`gram_matrix.entry`.
    :raises wazn.core.error.NotPositiveSemidefiniteError: The radicand is
        below ``-1e-9``; smaller negative values are clamped to zero.
    """
    radicand = entry(x, x) - 2 * entry(x, y) + entry(y, y)
    if radicand < -1e-9:
        raise NotPositiveSemidefiniteError(
            f'Negative squared distance {radicand!r} between {x!r} and {y!r}')
    return math.sqrt(max(radicand, 0.0))


def is_psd(values, tol=1e-9):
    """
    Whether the smallest eigenvalue of a symmetric matrix is at least
    ``-tol`` times the largest.
    """
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        return True
    eigenvalues = np.linalg.eigvalsh(values)
    scale = eigenvalues[-1] if eigenvalues[-1] > 0 else 1.0
    return bool(eigenvalues[0] >= -tol * scale)
