# -*- coding: utf-8 -*-
# Copyright (c) 2024 wazn.core contributors
# See LICENSE.rst for details.

"""
Rational operations on weighted transducers: sum (union), product
(concatenation), composition and projection.

For all pairs of strings :math:`(x, y)`:

* :math:`[\\![T_1 \\oplus T_2]\\!](x,y) = [\\![T_1]\\!](x,y) \\oplus [\\![T_2]\\!](x,y)`
* :math:`[\\![T_1 \\otimes T_2]\\!](x,y) = \\bigoplus_{x=x_1x_2, y=y_1y_2} [\\![T_1]\\!](x_1,y_1) \\otimes [\\![T_2]\\!](x_2,y_2)`
* :math:`[\\![T_1 \\circ T_2]\\!](x,y) = \\bigoplus_{z} [\\![T_1]\\!](x,z) \\otimes [\\![T_2]\\!](z,y)`
"""

from collections import deque
from functools import reduce

from wazn.core.error import AlphabetMismatchError
from wazn.core.symbols import EPSILON, compatible
from wazn.core.wfst import arc, wfst, trim


__all__ = ["union", "concat", "compose", "project"]


def _check(t1, t2, pairs):
    if t1.semiring is not t2.semiring:
        raise ValueError(f'Semiring mismatch: {t1.semiring.name} vs {t2.semiring.name}')
    for a, b, what in pairs:
        if not compatible(a, b):
            raise AlphabetMismatchError(f'Incompatible {what} symbol tables')


def _shift(arcs, offset):
    return [a._replace(src=a.src + offset, dst=a.dst + offset) for a in arcs]


def union(t1, t2, *more):
    """
    Sum of two (or more) transducers. A fresh super-initial state (weight
    one) reaches each operand's initial states through
    :math:`\\epsilon:\\epsilon` arcs weighted with their :math:`\\lambda`.
    """
    if more:
        return reduce(union, more, union(t1, t2))

    _check(t1, t2, [(t1.isymbols, t2.isymbols, 'input'),
                    (t1.osymbols, t2.osymbols, 'output')])
    one = t1.semiring.one
    off1, off2 = 1, 1 + t1.num_states

    arcs = [arc(0, EPSILON, EPSILON, w, q + off1) for q, w in t1.initial.items()]
    arcs += [arc(0, EPSILON, EPSILON, w, q + off2) for q, w in t2.initial.items()]
    arcs += _shift(t1.arcs(), off1) + _shift(t2.arcs(), off2)

    final = {q + off1: w for q, w in t1.final.items()}
    final.update({q + off2: w for q, w in t2.final.items()})

    return wfst(t1.semiring, 1 + t1.num_states + t2.num_states, {0: one}, final, arcs,
                t1.isymbols or t2.isymbols, t1.osymbols or t2.osymbols)


def concat(t1, t2, *more):
    """
    Product of two (or more) transducers. Each final state ``f`` of ``t1`` is
    bridged to each initial state ``i`` of ``t2`` by an
    :math:`\\epsilon:\\epsilon` arc weighted :math:`\\rho_1(f) \\otimes \\lambda_2(i)`.
    """
    if more:
        return reduce(concat, more, concat(t1, t2))

    _check(t1, t2, [(t1.isymbols, t2.isymbols, 'input'),
                    (t1.osymbols, t2.osymbols, 'output')])
    times = t1.semiring.times
    off = t1.num_states

    arcs = list(t1.arcs()) + _shift(t2.arcs(), off)
    for f, rho in t1.final.items():
        for i, lam in t2.initial.items():
            arcs.append(arc(f, EPSILON, EPSILON, times(rho, lam), i + off))

    return wfst(t1.semiring, t1.num_states + t2.num_states,
                dict(t1.initial), {q + off: w for q, w in t2.final.items()}, arcs,
                t1.isymbols or t2.isymbols, t1.osymbols or t2.osymbols)


def compose(t1, t2):
    """
    Composition :math:`T_1 \\circ T_2`, matching ``t1``'s output tape with
    ``t2``'s input tape.

    Epsilons are handled with the three-state filter: between two matched
    symbols, a ``t1`` output-epsilon move and a ``t2`` input-epsilon move are
    first taken together, after which only one side may continue alone.
    Every interleaving of epsilon moves therefore contributes exactly one
    path and no pair weight is counted twice.

    The result is trimmed; its states are numbered in breadth-first
    discovery order, so the output is deterministic.

    :raises wazn.core.error.AlphabetMismatchError: ``t1``'s output symbol
        table differs from ``t2``'s input symbol table.
    """
    _check(t1, t2, [(t1.osymbols, t2.isymbols, 'intermediate')])
    times = t1.semiring.times
    index2 = t2.arcs_by_ilabel

    ids = {}
    queue = deque()

    def state(q1, q2, f):
        key = (q1, q2, f)
        if key not in ids:
            ids[key] = len(ids)
            queue.append(key)
        return ids[key]

    initial = {}
    for i1, w1 in t1.initial.items():
        for i2, w2 in t2.initial.items():
            initial[state(i1, i2, 0)] = times(w1, w2)

    final, arcs = {}, []
    while queue:
        q1, q2, f = key = queue.popleft()
        src = ids[key]
        if q1 in t1.final and q2 in t2.final:
            final[src] = times(t1.final[q1], t2.final[q2])

        eps2 = index2[q2].get(EPSILON, ())
        for a1 in t1.arcs(q1):
            if a1.olabel != EPSILON:
                for a2 in index2[q2].get(a1.olabel, ()):
                    arcs.append(arc(src, a1.ilabel, a2.olabel, times(a1.weight, a2.weight),
                                    state(a1.dst, a2.dst, 0)))
            else:
                if f == 0:
                    # both sides leave on epsilon together
                    for a2 in eps2:
                        arcs.append(arc(src, a1.ilabel, a2.olabel, times(a1.weight, a2.weight),
                                        state(a1.dst, a2.dst, 0)))
                if f in (0, 2):
                    arcs.append(arc(src, a1.ilabel, EPSILON, a1.weight, state(a1.dst, q2, 2)))
        if f in (0, 1):
            for a2 in eps2:
                arcs.append(arc(src, EPSILON, a2.olabel, a2.weight, state(q1, a2.dst, 1)))

    result = wfst(t1.semiring, len(ids), initial, final, arcs, t1.isymbols, t2.osymbols)
    return trim(result)


def project(t, side='output'):
    """
    Acceptor keeping ``side`` (``'input'`` or ``'output'``) labels on both
    tapes; weights are preserved.
    """
    if side not in ('input', 'output'):
        raise ValueError(f'Unknown projection side: {side}')
    if side == 'input':
        arcs = [a._replace(olabel=a.ilabel) for a in t.arcs()]
        symbols = t.isymbols
    else:
        arcs = [a._replace(ilabel=a.olabel) for a in t.arcs()]
        symbols = t.osymbols
    return wfst(t.semiring, t.num_states, dict(t.initial), dict(t.final), arcs, symbols, symbols)
