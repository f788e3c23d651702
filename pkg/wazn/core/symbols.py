# -*- coding: utf-8 -*-
# Copyright (c) 2024 wazn.core contributors
# See LICENSE.rst for details.

"""
Symbol tables mapping transducer labels to integer ids, with id ``0``
reserved for epsilon.
"""

from wazn.core.error import FormatError, SymbolNotFoundError


#: The epsilon label, bound to id 0 in every symbol table.
EPSILON = '<eps>'


class symbol_table(object):
    """
    An ordered, bidirectional mapping between symbols and integer ids.

    :param symbols: Symbols to add, in order; ids are assigned from 1.
    :type symbols: iterable
    """
    def __init__(self, symbols=()):
        self._ids = {EPSILON: 0}
        self._symbols = {0: EPSILON}
        for s in symbols:
            self.add_symbol(s)

    def add_symbol(self, symbol, key=None):
        """
        Add ``symbol`` (no-op if present) and return its id.

        :param key: Explicit id, otherwise one past the current maximum.
        :type key: int
        """
        if symbol in self._ids:
            return self._ids[symbol]
        if key is None:
            key = max(self._symbols) + 1
        if key in self._symbols:
            raise FormatError(f'Symbol id {key} already bound to {self._symbols[key]!r}')
        self._ids[symbol] = key
        self._symbols[key] = symbol
        return key

    def find(self, symbol):
        """
        :raises wazn.core.error.SymbolNotFoundError: Unknown symbol.
        :rtype: int
        """
        try:
            return self._ids[symbol]
        except KeyError:
            raise SymbolNotFoundError(f'Symbol not in alphabet: {symbol!r}')

    def symbol(self, key):
        try:
            return self._symbols[key]
        except KeyError:
            raise SymbolNotFoundError(f'No symbol with id {key}')

    def symbols(self):
        """
        All non-epsilon symbols in id order.

        :rtype: list
        """
        return [self._symbols[k] for k in sorted(self._symbols) if k != 0]

    def max_id(self):
        return max(self._symbols)

    def __contains__(self, symbol):
        return symbol in self._ids

    def __len__(self):
        return len(self._ids)

    def __iter__(self):
        return iter(sorted(self._symbols.items()))

    def __eq__(self, other):
        return isinstance(other, symbol_table) and self._ids == other._ids

    def __hash__(self):
        return hash(frozenset(self._ids.items()))

    def __repr__(self):
        return f'symbol_table({len(self._ids) - 1} symbols)'

    def dumps(self):
        """
        Serialize as ``symbol<TAB>id`` lines.

        :rtype: str
        """
        return ''.join(f'{s}\t{k}\n' for k, s in self)

    @classmethod
    def loads(cls, text):
        """
        Parse the ``symbol<TAB>id`` text form.

        :raises wazn.core.error.FormatError: Malformed line, or epsilon not
            bound to 0.
        """
        table = cls()
        for lineno, line in enumerate(text.splitlines(), 1):
            if not line.strip():
                continue
            fields = line.split('\t')
            if len(fields) != 2:
                raise FormatError(f'Symbol table line {lineno}: expected 2 fields, got {len(fields)}')
            symbol, key = fields
            try:
                key = int(key)
            except ValueError:
                raise FormatError(f'Symbol table line {lineno}: bad id {key!r}')
            if key == 0 or symbol == EPSILON:
                if key != 0 or symbol != EPSILON:
                    raise FormatError(f'Symbol table line {lineno}: id 0 is reserved for {EPSILON}')
                continue
            table.add_symbol(symbol, key)
        return table

    def write(self, path):
        with open(path, 'w', encoding='utf-8') as fp:
            fp.write(self.dumps())

    @classmethod
    def read(cls, path):
        with open(path, 'r', encoding='utf-8') as fp:
            return cls.loads(fp.read())


def compatible(a, b):
    """
    Two (optional) symbol tables are compatible when either is absent or
    both bind the same symbols to the same ids.
    """
    return a is None or b is None or a == b
