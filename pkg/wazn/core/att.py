# -*- coding: utf-8 -*-
# Copyright (c) 2024 wazn.core contributors
# See LICENSE.rst for details.

"""
AT&T-style text serialization of transducers.

One arc per line, ``src<TAB>dst<TAB>ilabel<TAB>olabel[<TAB>weight]``, then
one final state per line, ``state[<TAB>weight]``. An omitted weight means
the semiring one. The first arc's source is the (single, weight-one)
initial state; any other initial configuration is written explicitly
before the arcs as ``@initial<TAB>state[<TAB>weight]`` lines.

Weights are written with :py:func:`repr`, which round-trips IEEE doubles,
so ``dumps(loads(text)) == text`` holds for any text this module writes.
"""

from wazn.core import semiring as sr
from wazn.core.error import FormatError
from wazn.core.wfst import builder


INITIAL = '@initial'


def _weight(w, semiring):
    return '' if w == semiring.one else f'\t{float(w)!r}'


def _parse_weight(field, lineno):
    try:
        return float(field)
    except ValueError:
        raise FormatError(f'Line {lineno}: bad weight {field!r}')


def _parse_state(field, lineno):
    try:
        q = int(field)
    except ValueError:
        raise FormatError(f'Line {lineno}: bad state id {field!r}')
    if q < 0:
        raise FormatError(f'Line {lineno}: negative state id {q}')
    return q


def _implied_initial(t):
    arcs = t.arcs()
    return (len(t.initial) == 1 and arcs and arcs[0].src in t.initial
            and t.initial[arcs[0].src] == t.semiring.one)


def dumps(t):
    """
    :rtype: str
    """
    lines = []
    if not _implied_initial(t):
        for q, w in t.initial.items():
            lines.append(f'{INITIAL}\t{q}{_weight(w, t.semiring)}')
    for a in t.arcs():
        for label in (a.ilabel, a.olabel):
            if '\t' in label or '\n' in label or not label:
                raise FormatError(f'Label {label!r} cannot be written as text')
        lines.append(f'{a.src}\t{a.dst}\t{a.ilabel}\t{a.olabel}{_weight(a.weight, t.semiring)}')
    for q, w in t.final.items():
        lines.append(f'{q}{_weight(w, t.semiring)}')
    return ''.join(line + '\n' for line in lines)


def loads(text, semiring=sr.real, isymbols=None, osymbols=None):
    """
    Parse the text form.

    :raises wazn.core.error.FormatError: A line has the wrong number of
        fields, or a bad state id or weight.
    """
    b = builder(semiring, isymbols, osymbols)
    explicit = {}
    first_src = None
    max_state = -1
    finals = []

    for lineno, line in enumerate(text.splitlines(), 1):
        if not line:
            continue
        fields = line.split('\t')
        if fields[0] == INITIAL:
            if len(fields) not in (2, 3):
                raise FormatError(f'Line {lineno}: malformed initial state line')
            q = _parse_state(fields[1], lineno)
            explicit[q] = _parse_weight(fields[2], lineno) if len(fields) == 3 else semiring.one
            max_state = max(max_state, q)
        elif len(fields) in (4, 5):
            src, dst = _parse_state(fields[0], lineno), _parse_state(fields[1], lineno)
            w = _parse_weight(fields[4], lineno) if len(fields) == 5 else semiring.one
            b.add_arc(src, fields[2], fields[3], w, dst)
            if first_src is None:
                first_src = src
            max_state = max(max_state, src, dst)
        elif len(fields) in (1, 2):
            q = _parse_state(fields[0], lineno)
            w = _parse_weight(fields[1], lineno) if len(fields) == 2 else semiring.one
            finals.append((q, w))
            max_state = max(max_state, q)
        else:
            raise FormatError(f'Line {lineno}: expected 1, 2, 4 or 5 fields, got {len(fields)}')

    b.num_states = max_state + 1
    if explicit:
        b.initial.update(explicit)
    elif first_src is not None:
        b.set_initial(first_src)
    for q, w in finals:
        b.set_final(q, w)
    return b.build()


def dump(t, path):
    with open(path, 'w', encoding='utf-8') as fp:
        fp.write(dumps(t))


def load(path, semiring=sr.real, isymbols=None, osymbols=None):
    with open(path, 'r', encoding='utf-8') as fp:
        return loads(fp.read(), semiring, isymbols, osymbols)
