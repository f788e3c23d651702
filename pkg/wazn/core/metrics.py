# -*- coding: utf-8 -*-
# Copyright (c) 2024 wazn.core contributors
# See LICENSE.rst for details.

"""
Per-class accuracy, precision, recall and F1 of a set of predictions.
"""

from collections import namedtuple

from sklearn.metrics import multilabel_confusion_matrix


#: Scores of one class against the rest, from its confusion counts.
class_scores = namedtuple('class_scores', ['label', 'tp', 'fp', 'fn', 'tn',
                                           'accuracy', 'precision', 'recall', 'f1'])

MEASURES = ('accuracy', 'precision', 'recall', 'f1')


def _ratio(a, b):
    return a / b if b else 0.0


class metrics_report(object):
    """
    :param rows: One :py:data:`class_scores` per class, in class order.
    :param correct: Number of exactly right predictions.
    :param total: Number of predictions.
    """
    def __init__(self, rows, correct, total):
        self.rows = tuple(rows)
        self.correct = correct
        self.total = total

    @property
    def classes(self):
        return tuple(r.label for r in self.rows)

    def __getitem__(self, label):
        for r in self.rows:
            if r.label == label:
                return r
        raise KeyError(label)

    @property
    def macro(self):
        """
        Unweighted mean of each measure over the classes.

        :rtype: dict
        """
        n = len(self.rows)
        return {m: _ratio(sum(getattr(r, m) for r in self.rows), n) for m in MEASURES}

    @property
    def accuracy(self):
        """
        Share of predictions equal to the gold label.
        """
        return _ratio(self.correct, self.total)


def evaluate(pred, gold, classes=None):
    """
    One-vs-rest confusion counts and scores for every class.

    :param pred: Predicted labels.
    :param gold: Reference labels, aligned with ``pred``.
    :param classes: Classes to report; defaults to every label seen, sorted.
    :raises ValueError: ``pred`` and ``gold`` differ in length.
    :rtype: metrics_report
    """
    pred, gold = list(pred), list(gold)
    if len(pred) != len(gold):
        raise ValueError(f'{len(pred)} predictions for {len(gold)} reference labels')
    classes = sorted(set(gold) | set(pred)) if classes is None else list(classes)
    if not gold or not classes:
        return metrics_report([], 0, len(gold))

    rows = []
    matrices = multilabel_confusion_matrix(gold, pred, labels=classes)
    for label, ((tn, fp), (fn, tp)) in zip(classes, matrices):
        tn, fp, fn, tp = int(tn), int(fp), int(fn), int(tp)
        precision = _ratio(tp, tp + fp)
        recall = _ratio(tp, tp + fn)
        rows.append(class_scores(label, tp, fp, fn, tn,
                                 _ratio(tp + tn, len(gold)), precision, recall,
                                 _ratio(2 * precision * recall, precision + recall)))
    correct = sum(1 for p, g in zip(pred, gold) if p == g)
    return metrics_report(rows, correct, len(gold))


def format_report(report):
    """
    Aligned text table: one row per class, then the macro average.

    :rtype: str
    """
    labels = [r.label for r in report.rows] + ['macro']
    width = max([len('class')] + [len(str(label)) for label in labels])
    header = f'{"class":<{width}}' + ''.join(f'  {m:>9}' for m in MEASURES)
    lines = [header, '-' * len(header)]
    for r in report.rows:
        lines.append(f'{r.label:<{width}}' + ''.join(f'  {getattr(r, m):>9.4f}' for m in MEASURES))
    macro = report.macro
    lines.append('-' * len(header))
    lines.append(f'{"macro":<{width}}' + ''.join(f'  {macro[m]:>9.4f}' for m in MEASURES))
    lines.append(f'overall accuracy {report.accuracy:.4f} ({report.correct}/{report.total})')
    return ''.join(line + '\n' for line in lines)
