# -*- coding: utf-8 -*-
# Copyright (c) 2024 wazn.core contributors
# See LICENSE.rst for details.

"""
Path-based evaluation of transducers: pair weights, shortest distance,
best path and exhaustive path enumeration.
"""

from collections import namedtuple

from wazn.core import semiring as sr
from wazn.core.error import NotRegulatedError
from wazn.core.symbols import EPSILON


#: An accepting path. ``weight`` is the :math:`\otimes`-product of the arc
#: weights; ``total`` also includes the initial and final weights.
path = namedtuple('path', ['arcs', 'origin', 'destination', 'weight', 'input', 'output', 'total'])


def _strip(labels):
    return tuple(x for x in labels if x != EPSILON)


def _make_path(t, origin, arcs):
    K = t.semiring
    weight = K.product(a.weight for a in arcs)
    destination = arcs[-1].dst if arcs else origin
    total = K.times(K.times(t.initial[origin], weight), t.final[destination])
    return path(tuple(arcs), origin, destination, weight,
                _strip(a.ilabel for a in arcs), _strip(a.olabel for a in arcs), total)


def enumerate_paths(t, max_len):
    """
    Every accepting path with at most ``max_len`` arcs, exactly once, in
    depth-first order from the initial states (ascending id) following arcs
    in stored order.

    :rtype: list of :py:data:`path`
    """
    found = []
    for origin in t.initial:
        stack = [(origin, [])]
        while stack:
            q, arcs = stack.pop()
            if q in t.final:
                found.append(_make_path(t, origin, arcs))
            if len(arcs) < max_len:
                for a in reversed(t.arcs(q)):
                    stack.append((a.dst, arcs + [a]))
    return found


def weight_of_pair(t, x, y, max_len=None):
    """
    :math:`[\\![T]\\!](x, y)`: the :math:`\\oplus`-sum over all paths from an
    initial to a final state with input ``x`` and output ``y`` of
    :math:`\\lambda(p[\\pi]) \\otimes w[\\pi] \\otimes \\rho(n[\\pi])`, or the
    semiring zero when there is none.

    :param x: Input string (or sequence of symbols).
    :param y: Output string (or sequence of symbols).
    :param max_len: Bound on path length, required for cyclic machines.
    :raises wazn.core.error.NotRegulatedError: ``t`` is cyclic and
        ``max_len`` is ``None``.
    """
    x, y = tuple(x), tuple(y)
    K = t.semiring

    if max_len is not None:
        return K.sum(p.total for p in enumerate_paths(t, max_len)
                     if p.input == x and p.output == y)

    if not t.acyclic:
        raise NotRegulatedError('Cyclic machine is not regulated under enumeration; pass max_len')

    # value[(q, i, j)]: weight of completing from q having read x[:i], y[:j]
    value = {}
    order = t.topological_order()
    for q in reversed(order):
        for i in range(len(x), -1, -1):
            for j in range(len(y), -1, -1):
                w = t.final[q] if (i == len(x) and j == len(y) and q in t.final) else K.zero
                for a in t.arcs(q):
                    ni, nj = i, j
                    if a.ilabel != EPSILON:
                        if i == len(x) or x[i] != a.ilabel:
                            continue
                        ni += 1
                    if a.olabel != EPSILON:
                        if j == len(y) or y[j] != a.olabel:
                            continue
                        nj += 1
                    rest = value[(a.dst, ni, nj)]
                    if rest != K.zero:
                        w = K.plus(w, K.times(a.weight, rest))
                value[(q, i, j)] = w
    return K.sum(K.times(lam, value[(q, 0, 0)]) for q, lam in t.initial.items())


def forward(t):
    """
    Per-state :math:`\\oplus`-sum of weights of all paths from the initial
    states (initial weights included). ``t`` must be acyclic.

    :rtype: list
    """
    K = t.semiring
    alpha = [K.zero] * t.num_states
    for q, lam in t.initial.items():
        alpha[q] = lam
    for q in t.topological_order():
        if alpha[q] == K.zero:
            continue
        for a in t.arcs(q):
            alpha[a.dst] = K.plus(alpha[a.dst], K.times(alpha[q], a.weight))
    return alpha


def backward(t):
    """
    Per-state :math:`\\oplus`-sum of weights of all paths to the final
    states (final weights included). ``t`` must be acyclic.

    :rtype: list
    """
    K = t.semiring
    beta = [K.zero] * t.num_states
    for q in reversed(t.topological_order()):
        w = t.final.get(q, K.zero)
        for a in t.arcs(q):
            w = K.plus(w, K.times(a.weight, beta[a.dst]))
        beta[q] = w
    return beta


def shortest_distance(t):
    """
    :math:`\\oplus` over all accepting paths of
    :math:`\\lambda \\otimes w \\otimes \\rho`.

    :raises wazn.core.error.CyclicMachineError: ``t`` is cyclic.
    """
    K = t.semiring
    alpha = forward(t)
    return K.sum(K.times(alpha[q], rho) for q, rho in t.final.items())


def best_path(t):
    """
    A minimum-weight accepting path of a tropical machine. Ties are broken by
    the lexicographically smallest output string, then by the smallest
    sequence of state ids.

    :returns: The best path, or ``None`` when ``t`` accepts nothing.
    :raises wazn.core.error.CyclicMachineError: ``t`` is cyclic.
    """
    assert t.semiring is sr.tropical, 'best_path needs the tropical semiring'
    best = [None] * t.num_states

    # best[q] = (weight, output, states, arcs) of the best completion from q
    for q in reversed(t.topological_order()):
        options = []
        if q in t.final:
            options.append((t.final[q], (), (q,), ()))
        for a in t.arcs(q):
            rest = best[a.dst]
            if rest is None:
                continue
            out = rest[1] if a.olabel == EPSILON else (a.olabel,) + rest[1]
            options.append((a.weight + rest[0], out, (q,) + rest[2], (a,) + rest[3]))
        if options:
            best[q] = min(options, key=lambda o: o[:3])

    candidates = [(lam + best[q][0], best[q][1], best[q][2], best[q][3], q)
                  for q, lam in t.initial.items() if best[q] is not None]
    if not candidates:
        return None
    _, _, _, arcs, origin = min(candidates, key=lambda c: c[:3])
    return _make_path(t, origin, list(arcs))


def input_strings(t):
    """
    :py:func:`output_strings` on the input tape.
    """
    return output_strings(t, side='input')


def output_strings(t, side='output'):
    """
    The accepted strings of an acyclic machine on ``side`` with their
    :math:`\\oplus`-summed weights.

    :rtype: dict
    """
    K = t.semiring
    assert side in ('input', 'output')
    t.topological_order()
    strings = {}
    for p in enumerate_paths(t, t.num_states):
        s = p.output if side == 'output' else p.input
        strings[s] = K.plus(strings.get(s, K.zero), p.total)
    return strings
