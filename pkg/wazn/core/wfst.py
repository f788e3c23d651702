# -*- coding: utf-8 -*-
# Copyright (c) 2024 wazn.core contributors
# See LICENSE.rst for details.

"""
Immutable weighted finite-state transducers
:math:`T = (\\Sigma, \\Delta, Q, I, F, E, \\lambda, \\rho)` over a
:py:mod:`wazn.core.semiring`, and a single-threaded builder for them.

States are dense integer ids ``0 .. num_states - 1``; initial and final
weights are partial maps where absence means the semiring zero.
"""

import heapq
from collections import namedtuple
from functools import cached_property
from types import MappingProxyType

from wazn.core import semiring as sr
from wazn.core.error import CyclicMachineError, SymbolNotFoundError
from wazn.core.symbols import EPSILON


#: A transition ``src --ilabel:olabel/weight--> dst``.
arc = namedtuple('arc', ['src', 'ilabel', 'olabel', 'weight', 'dst'])


class wfst(object):
    """
    A constructed transducer. Instances are never mutated once built, so they
    can be shared freely between threads; every operation in this package
    returns a new machine.

    Use :py:class:`builder` rather than calling this constructor directly.

    :param semiring: Weight algebra.
    :type semiring: wazn.core.semiring.semiring
    :param num_states: Size of :math:`Q`.
    :type num_states: int
    :param initial: State to initial weight (:math:`\\lambda`).
    :type initial: dict
    :param final: State to final weight (:math:`\\rho`).
    :type final: dict
    :param arcs: Transitions, in insertion order.
    :type arcs: iterable of :py:class:`arc`
    :param isymbols: Optional input symbol table.
    :type isymbols: wazn.core.symbols.symbol_table
    :param osymbols: Optional output symbol table.
    :type osymbols: wazn.core.symbols.symbol_table
    """
    def __init__(self, semiring=sr.real, num_states=0, initial=None, final=None,
                 arcs=(), isymbols=None, osymbols=None):
        self.semiring = semiring
        self.num_states = num_states
        self.isymbols = isymbols
        self.osymbols = osymbols

        zero = semiring.zero
        self._initial = {q: w for q, w in sorted((initial or {}).items()) if w != zero}
        self._final = {q: w for q, w in sorted((final or {}).items()) if w != zero}
        for q in list(self._initial) + list(self._final):
            assert 0 <= q < num_states, f'State {q} out of range'

        out = [[] for _ in range(num_states)]
        for a in arcs:
            assert 0 <= a.src < num_states and 0 <= a.dst < num_states, f'Arc {a} has an endpoint outside Q'
            out[a.src].append(a)
        self._out = tuple(tuple(x) for x in out)

    @property
    def states(self):
        return range(self.num_states)

    @property
    def initial(self):
        """
        Read-only view of :math:`\\lambda`.
        """
        return MappingProxyType(self._initial)

    @property
    def final(self):
        """
        Read-only view of :math:`\\rho`.
        """
        return MappingProxyType(self._final)

    def arcs(self, state=None):
        """
        Outgoing arcs of ``state``, or every arc in state order when ``None``.
        """
        if state is not None:
            return self._out[state]
        return tuple(a for out in self._out for a in out)

    @cached_property
    def num_arcs(self):
        return sum(len(out) for out in self._out)

    @cached_property
    def input_alphabet(self):
        """
        :math:`\\Sigma`: the input symbol table's symbols, if attached,
        otherwise the non-epsilon input labels in use.

        :rtype: frozenset
        """
        if self.isymbols is not None:
            return frozenset(self.isymbols.symbols())
        return frozenset(a.ilabel for a in self.arcs() if a.ilabel != EPSILON)

    @cached_property
    def output_alphabet(self):
        """
        :math:`\\Delta`, as for :py:attr:`input_alphabet`.

        :rtype: frozenset
        """
        if self.osymbols is not None:
            return frozenset(self.osymbols.symbols())
        return frozenset(a.olabel for a in self.arcs() if a.olabel != EPSILON)

    @cached_property
    def _topological_order(self):
        indegree = [0] * self.num_states
        for a in self.arcs():
            indegree[a.dst] += 1
        ready = [q for q in self.states if indegree[q] == 0]
        heapq.heapify(ready)
        order = []
        while ready:
            q = heapq.heappop(ready)
            order.append(q)
            for a in self._out[q]:
                indegree[a.dst] -= 1
                if indegree[a.dst] == 0:
                    heapq.heappush(ready, a.dst)
        return tuple(order) if len(order) == self.num_states else None

    @property
    def acyclic(self):
        return self._topological_order is not None

    def topological_order(self):
        """
        States such that every arc goes from an earlier to a later state;
        among valid orders the one that always picks the smallest ready id.

        :raises wazn.core.error.CyclicMachineError: The machine has a cycle.
        :rtype: tuple
        """
        order = self._topological_order
        if order is None:
            raise CyclicMachineError('Machine is cyclic: no topological order')
        return order

    @cached_property
    def arcs_by_ilabel(self):
        """
        Per-state index ``{ilabel: (arc, ...)}``, used by composition.
        """
        index = []
        for out in self._out:
            d = {}
            for a in out:
                d.setdefault(a.ilabel, []).append(a)
            index.append({k: tuple(v) for k, v in d.items()})
        return tuple(index)

    def __repr__(self):
        return (f'wfst({self.semiring.name}, {self.num_states} states, '
                f'{self.num_arcs} arcs)')


class builder(object):
    """
    Mutable, single-threaded accumulator producing a :py:class:`wfst`.

    :param semiring: Weight algebra of the machine being built.
    :param isymbols: Optional input symbol table; labels are checked
        against it as arcs are added.
    :param osymbols: Optional output symbol table.
    """
    def __init__(self, semiring=sr.real, isymbols=None, osymbols=None):
        self.semiring = semiring
        self.isymbols = isymbols
        self.osymbols = osymbols
        self.num_states = 0
        self.initial = {}
        self.final = {}
        self.arcs = []

    def add_state(self):
        q = self.num_states
        self.num_states += 1
        return q

    def add_states(self, n):
        return [self.add_state() for _ in range(n)]

    def set_initial(self, state, weight=None):
        self.initial[state] = self.semiring.one if weight is None else weight

    def set_final(self, state, weight=None):
        self.final[state] = self.semiring.one if weight is None else weight

    def add_arc(self, src, ilabel, olabel, weight=None, dst=None):
        """
        Add ``src --ilabel:olabel/weight--> dst``; weight defaults to one.

        :raises wazn.core.error.SymbolNotFoundError: A label is missing from
            an attached symbol table.
        """
        for label, table in ((ilabel, self.isymbols), (olabel, self.osymbols)):
            if table is not None and label not in table:
                raise SymbolNotFoundError(f'Symbol not in alphabet: {label!r}')
        weight = self.semiring.one if weight is None else weight
        self.arcs.append(arc(src, ilabel, olabel, weight, dst))

    def build(self):
        return wfst(self.semiring, self.num_states, self.initial, self.final,
                    self.arcs, self.isymbols, self.osymbols)


def empty(semiring=sr.real, isymbols=None, osymbols=None):
    """
    The machine accepting nothing.
    """
    return wfst(semiring, isymbols=isymbols, osymbols=osymbols)


def epsilon_machine(semiring=sr.real, isymbols=None, osymbols=None):
    """
    The machine accepting only :math:`(\\epsilon, \\epsilon)`, with weight one.
    """
    b = builder(semiring, isymbols, osymbols)
    q = b.add_state()
    b.set_initial(q)
    b.set_final(q)
    return b.build()


def linear_from_string(s, semiring=sr.real, symbols=None):
    """
    Chain of ``len(s) + 1`` states mapping ``s`` to itself, weight one on
    every arc.

    :param s: A string (one symbol per character) or a sequence of symbols.
    :param symbols: Optional symbol table, attached on both tapes.
    :type symbols: wazn.core.symbols.symbol_table
    :raises wazn.core.error.SymbolNotFoundError: A symbol of ``s`` is not in
        ``symbols``.
    """
    b = builder(semiring, symbols, symbols)
    q = b.add_state()
    b.set_initial(q)
    for symbol in s:
        r = b.add_state()
        b.add_arc(q, symbol, symbol, dst=r)
        q = r
    b.set_final(q)
    return b.build()


def _renumber(t, keep, arcs=None):
    """
    Restrict ``t`` to the ``keep`` states, preserving their relative order.
    """
    ids = {q: i for i, q in enumerate(sorted(keep))}
    arcs = t.arcs() if arcs is None else arcs
    return wfst(t.semiring, len(ids),
                {ids[q]: w for q, w in t.initial.items() if q in ids},
                {ids[q]: w for q, w in t.final.items() if q in ids},
                [a._replace(src=ids[a.src], dst=ids[a.dst]) for a in arcs
                 if a.src in ids and a.dst in ids],
                t.isymbols, t.osymbols)


def _reachable(starts, edges):
    seen = set(starts)
    stack = list(starts)
    while stack:
        q = stack.pop()
        for r in edges.get(q, ()):
            if r not in seen:
                seen.add(r)
                stack.append(r)
    return seen


def trim(t):
    """
    Remove states that are not both accessible from an initial state and
    co-accessible to a final state. Pair weights are unchanged.
    """
    forward, backward = {}, {}
    for a in t.arcs():
        forward.setdefault(a.src, []).append(a.dst)
        backward.setdefault(a.dst, []).append(a.src)
    live = _reachable(t.initial, forward) & _reachable(t.final, backward)
    if len(live) == t.num_states:
        return t
    return _renumber(t, live)


def arcsort(t, key='ilabel'):
    """
    Sort each state's arcs by input (``'ilabel'``) or output (``'olabel'``)
    label; the sort is stable.
    """
    assert key in ('ilabel', 'olabel')
    field = (lambda a: a.ilabel) if key == 'ilabel' else (lambda a: a.olabel)
    arcs = [a for q in t.states for a in sorted(t.arcs(q), key=field)]
    return wfst(t.semiring, t.num_states, dict(t.initial), dict(t.final),
                arcs, t.isymbols, t.osymbols)


def invert(t):
    """
    Swap input and output tapes.
    """
    arcs = [a._replace(ilabel=a.olabel, olabel=a.ilabel) for a in t.arcs()]
    return wfst(t.semiring, t.num_states, dict(t.initial), dict(t.final),
                arcs, t.osymbols, t.isymbols)


def map_weights(t, semiring, fn):
    """
    Re-type ``t`` into ``semiring``, transforming every arc, initial and final
    weight with ``fn``.
    """
    return wfst(semiring, t.num_states,
                {q: fn(w) for q, w in t.initial.items()},
                {q: fn(w) for q, w in t.final.items()},
                [a._replace(weight=fn(a.weight)) for a in t.arcs()],
                t.isymbols, t.osymbols)


def from_pairs(pairs, semiring=sr.real, isymbols=None, osymbols=None):
    """
    Union-shaped machine accepting each ``(x, y, weight)`` triple on its own
    branch. Inputs and outputs are aligned symbol by symbol; the shorter side
    is padded with epsilon.

    :param pairs: Iterable of ``(x, y)`` or ``(x, y, weight)``.
    """
    b = builder(semiring, isymbols, osymbols)
    start = b.add_state()
    b.set_initial(start)
    for entry in pairs:
        x, y = tuple(entry[0]), tuple(entry[1])
        weight = entry[2] if len(entry) > 2 else semiring.one
        q = start
        for k in range(max(len(x), len(y), 1)):
            r = b.add_state()
            i = x[k] if k < len(x) else EPSILON
            o = y[k] if k < len(y) else EPSILON
            b.add_arc(q, i, o, weight if k == 0 else None, r)
            q = r
        b.set_final(q)
    return b.build()
