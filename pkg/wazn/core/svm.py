# -*- coding: utf-8 -*-
# Copyright (c) 2024 wazn.core contributors
# See LICENSE.rst for details.

"""
Support vector machines on precomputed kernel matrices.

Binary problems are solved in the dual with sequential minimal optimization,
choosing at each step the pair of indices that violates the KKT conditions
the most; multi-class models are one-vs-rest with an argmax over the raw
decision values.
"""

import logging
from collections import namedtuple

import numpy as np

from wazn.core.error import DegenerateLabelsError, FormatError, HeaderMismatchError
from wazn.core.kernel import is_psd
from wazn.core.threadpool import threadpool
from wazn.core.util import atomic_write


logger = logging.getLogger(__name__)

MAGIC = 'RKSVM1'

#: Diagonal jitter added to a Gram matrix that is not positive semidefinite.
JITTER = 1e-8

TAU = 1e-12

#: Result of :py:func:`predict`: the winning class and the decision value of
#: every class, in class order.
prediction = namedtuple('prediction', ['label', 'decisions'])


class binary_model(object):
    """
    A trained two-class machine:
    :math:`f(x) = \\sum_i \\alpha_i y_i K(x_i, x) + b`.

    :param support: Indices of the support vectors in the training set.
    :param alpha_y: :math:`\\alpha_i y_i`, aligned with ``support``.
    :param bias: :math:`b`.
    :param C: Box constraint used in training.
    :param names: Training document names, when known.
    """
    def __init__(self, support, alpha_y, bias, C, names=None, iterations=0, objective=0.0):
        self.support = tuple(int(i) for i in support)
        self.alpha_y = tuple(float(a) for a in alpha_y)
        self.bias = float(bias)
        self.C = float(C)
        self.names = tuple(names) if names is not None else None
        self.iterations = iterations
        self.objective = objective

    def decision(self, k_row):
        """
        :math:`f(x)` from the kernel values of ``x`` against every training
        document.
        """
        return sum(a * float(k_row[i]) for i, a in zip(self.support, self.alpha_y)) + self.bias

    def __repr__(self):
        return f'binary_model({len(self.support)} support vectors, b={self.bias!r})'


def _dual_objective(alpha, G):
    # G = Q alpha - 1
    return float(np.dot(alpha, 1.0 - (G + 1.0) / 2.0))


def smo_train(K, labels, C=1.0, tol=1e-3, max_iter=100000, names=None, trace=None):
    """
    Solve the soft-margin dual

    .. math::

        \\max_\\alpha \\sum_i \\alpha_i - \\frac{1}{2} \\sum_{ij} \\alpha_i
        \\alpha_j y_i y_j K_{ij}, \\quad 0 \\le \\alpha_i \\le C, \\quad
        \\sum_i \\alpha_i y_i = 0

    on a precomputed Gram matrix.

    :param K: ``N x N`` kernel matrix.
    :param labels: ``+1`` / ``-1`` per row of ``K``.
    :param C: Box constraint, positive.
    :param tol: Stopping tolerance on the maximal KKT violation.
    :param trace: Optional ``trace(iteration, objective)`` callback, called
        after every update.
    :raises wazn.core.error.DegenerateLabelsError: Only one label present.
    :rtype: binary_model
    """
    K = np.array(K, dtype=float)
    y = np.asarray(labels, dtype=float)
    n = len(y)
    if K.shape != (n, n):
        raise ValueError(f'Kernel of shape {K.shape} does not match {n} labels')
    if not np.all(np.abs(y) == 1.0):
        raise ValueError('Labels must be +1 or -1')
    if C <= 0:
        raise ValueError(f'C must be positive, got {C}')
    if np.all(y == 1.0) or np.all(y == -1.0):
        raise DegenerateLabelsError('Both labels must be present to train a binary model')

    if not is_psd(K):
        logger.warning(f'Kernel matrix is not positive semidefinite; adding {JITTER} to the diagonal')
        K = K + JITTER * np.eye(n)

    Q = np.outer(y, y) * K
    alpha = np.zeros(n)
    G = -np.ones(n)

    iteration = 0
    while iteration < max_iter:
        up = ((y > 0) & (alpha < C)) | ((y < 0) & (alpha > 0))
        low = ((y > 0) & (alpha > 0)) | ((y < 0) & (alpha < C))
        score = -y * G
        if not up.any() or not low.any():
            break
        i = int(np.argmax(np.where(up, score, -np.inf)))
        j = int(np.argmin(np.where(low, score, np.inf)))
        if score[i] - score[j] < tol:
            break

        old_i, old_j = alpha[i], alpha[j]
        if y[i] != y[j]:
            quad = max(Q[i, i] + Q[j, j] + 2 * Q[i, j], TAU)
            delta = (-G[i] - G[j]) / quad
            diff = alpha[i] - alpha[j]
            alpha[i] += delta
            alpha[j] += delta
            if diff > 0:
                if alpha[j] < 0:
                    alpha[j] = 0
                    alpha[i] = diff
            elif alpha[i] < 0:
                alpha[i] = 0
                alpha[j] = -diff
            if diff > 0:
                if alpha[i] > C:
                    alpha[i] = C
                    alpha[j] = C - diff
            elif alpha[j] > C:
                alpha[j] = C
                alpha[i] = C + diff
        else:
            quad = max(Q[i, i] + Q[j, j] - 2 * Q[i, j], TAU)
            delta = (G[i] - G[j]) / quad
            total = alpha[i] + alpha[j]
            alpha[i] -= delta
            alpha[j] += delta
            if total > C:
                if alpha[i] > C:
                    alpha[i] = C
                    alpha[j] = total - C
            elif alpha[j] < 0:
                alpha[j] = 0
                alpha[i] = total
            if total > C:
                if alpha[j] > C:
                    alpha[j] = C
                    alpha[i] = total - C
            elif alpha[i] < 0:
                alpha[i] = 0
                alpha[j] = total

        G += Q[:, i] * (alpha[i] - old_i) + Q[:, j] * (alpha[j] - old_j)
        iteration += 1
        if trace is not None:
            trace(iteration, _dual_objective(alpha, G))
    else:
        logger.warning(f'SMO stopped after {max_iter} iterations without converging')

    bias = -_rho(alpha, y, G, C)
    support = np.flatnonzero(alpha > 0)
    objective = _dual_objective(alpha, G)
    logger.debug(f'SMO converged in {iteration} iterations, {len(support)} support vectors, '
                 f'objective {objective:.6g}')
    return binary_model(support, alpha[support] * y[support], bias, C, names, iteration, objective)


def _rho(alpha, y, G, C):
    yG = y * G
    ub, lb = np.inf, -np.inf
    free = []
    for k in range(len(y)):
        if alpha[k] >= C:
            if y[k] < 0:
                ub = min(ub, yG[k])
            else:
                lb = max(lb, yG[k])
        elif alpha[k] <= 0:
            if y[k] > 0:
                ub = min(ub, yG[k])
            else:
                lb = max(lb, yG[k])
        else:
            free.append(yG[k])
    if free:
        return sum(free) / len(free)
    return (ub + lb) / 2


class ovr_model(object):
    """
    One :py:class:`binary_model` per class, each separating that class from
    all the others.

    :param classes: Class names, sorted.
    :param models: Binary models aligned with ``classes``.
    :param names: Training document names (columns of the kernel rows
        passed to :py:func:`predict`).
    :param order: n-gram order of the training kernel.
    :param normalized: Whether the training kernel was normalized.
    """
    def __init__(self, classes, models, names, order=None, normalized=None):
        if len(set(classes)) != len(classes):
            raise ValueError('Class names must be unique')
        self.classes = tuple(classes)
        self.models = tuple(models)
        self.names = tuple(names)
        self.order = order
        self.normalized = normalized

    @property
    def header(self):
        return (self.order, self.normalized)

    def dumps(self):
        """
        ``RKSVM1`` header, the training names, then one block per class with
        its ``C``, ``b`` and ``index<TAB>alpha_y`` support lines.

        :rtype: str
        """
        lines = [f'{MAGIC} classes={len(self.classes)} order={self.order} '
                 f'normalized={int(bool(self.normalized))}',
                 f'names {len(self.names)}']
        lines.extend(self.names)
        for label, m in zip(self.classes, self.models):
            lines.append(f'class {label}')
            lines.append(f'C {m.C!r}')
            lines.append(f'b {m.bias!r}')
            lines.append(f'support {len(m.support)}')
            lines.extend(f'{i}\t{a!r}' for i, a in zip(m.support, m.alpha_y))
        return ''.join(line + '\n' for line in lines)

    @classmethod
    def loads(cls, text):
        """
        :raises wazn.core.error.FormatError: Malformed model text.
        """
        lines = text.split('\n')
        pos = 0

        def take(prefix):
            nonlocal pos
            if pos >= len(lines) or not lines[pos].startswith(prefix):
                raise FormatError(f'Model line {pos + 1}: expected {prefix!r}')
            value = lines[pos][len(prefix):]
            pos += 1
            return value

        try:
            fields = dict(f.split('=', 1) for f in take(MAGIC + ' ').split(' '))
            k = int(fields['classes'])
            order = None if fields['order'] == 'None' else int(fields['order'])
            normalized = fields['normalized'] == '1'
            count = int(take('names '))
            names = lines[pos:pos + count]
            pos += count
            classes, models = [], []
            for _ in range(k):
                classes.append(take('class '))
                C = float(take('C '))
                b = float(take('b '))
                support, alpha_y = [], []
                for _ in range(int(take('support '))):
                    i, a = take('').split('\t')
                    support.append(int(i))
                    alpha_y.append(float(a))
                models.append(binary_model(support, alpha_y, b, C, names))
        except (KeyError, ValueError) as e:
            raise FormatError(f'Malformed model file: {e}')
        return cls(classes, models, names, order, normalized)

    def write(self, path):
        with atomic_write(path) as fp:
            fp.write(self.dumps())

    @classmethod
    def read(cls, path):
        with open(path, 'r', encoding='utf-8') as fp:
            return cls.loads(fp.read())

    def __repr__(self):
        return f'ovr_model({len(self.classes)} classes, {len(self.names)} training documents)'


def ovr_train(K, labels, C=1.0, tol=1e-3, classes=None, names=None, order=None,
              normalized=None, num_threads=None):
    """
    Train one binary model per class (+1 for the class, -1 for the rest),
    concurrently.

    :param K: Training Gram matrix, an array or a
        :py:class:`~wazn.core.kernel.gram_matrix` (whose names, order and
        normalization are then used).
    :param labels: Class name of every training document.
    :param classes: Classes to model; defaults to the labels present.
    :raises wazn.core.error.DegenerateLabelsError: Fewer than two classes,
        or a requested class has no training document.
    :rtype: ovr_model
    """
    if hasattr(K, 'values') and hasattr(K, 'names'):
        names = K.names if names is None else names
        order = K.order if order is None else order
        normalized = K.normalized if normalized is None else normalized
        K = K.values
    labels = list(labels)
    classes = sorted(set(labels) if classes is None else set(classes))
    if len(classes) < 2:
        raise DegenerateLabelsError(f'Need at least two classes, got {classes}')
    for c in classes:
        if c not in labels:
            raise DegenerateLabelsError(f'Class {c!r} has no training document')
    names = tuple(names) if names is not None else tuple(str(i) for i in range(len(labels)))

    def train(c):
        y = [1.0 if label == c else -1.0 for label in labels]
        m = smo_train(K, y, C, tol, names=names)
        logger.info(f'Class {c!r}: {m.iterations} iterations, {len(m.support)} support vectors')
        return m

    with threadpool(num_threads) as pool:
        models = pool.map(train, classes)
    return ovr_model(classes, models, names, order, normalized)


def predict(m, k_row, header=None):
    """
    Class with the largest decision value; ties go to the first class in
    name order.

    :param k_row: Kernel values against ``m.names``, in that order.
    :param header: ``(order, normalized)`` of the kernel ``k_row`` comes
        from, checked against the model's.
    :raises wazn.core.error.HeaderMismatchError: The headers differ.
    :rtype: prediction
    """
    if header is not None and tuple(header) != m.header:
        raise HeaderMismatchError(
            f'Kernel (order={header[0]}, normalized={int(bool(header[1]))}) does not match model '
            f'(order={m.order}, normalized={int(bool(m.normalized))})')
    if len(k_row) != len(m.names):
        raise ValueError(f'Kernel row has {len(k_row)} values, model expects {len(m.names)}')
    decisions = tuple(b.decision(k_row) for b in m.models)
    best = max(range(len(decisions)), key=lambda k: (decisions[k], -k))
    return prediction(m.classes[best], decisions)


def write_predictions(path, rows):
    """
    One ``doc<TAB>class<TAB>decision values...`` line per prediction,
    decision values in class order.

    :param rows: ``(doc name, prediction)`` pairs.
    """
    with atomic_write(path) as fp:
        for name, p in rows:
            fp.write('\t'.join([name, p.label] + [repr(float(v)) for v in p.decisions]) + '\n')


def read_predictions(path):
    """
    :returns: ``(doc name, predicted class)`` pairs.
    """
    rows = []
    with open(path, 'r', encoding='utf-8') as fp:
        for lineno, line in enumerate(fp, 1):
            line = line.rstrip('\n')
            if not line or line.startswith('#'):
                continue
            fields = line.split('\t')
            if len(fields) < 2:
                raise FormatError(f'{path}:{lineno}: expected doc<TAB>class')
            rows.append((fields[0], fields[1]))
    return rows
