# -*- coding: utf-8 -*-
# Copyright (c) 2024 wazn.core contributors
# See LICENSE.rst for details.

"""
Tests for the :py:mod:`wazn.core.symbols` module.
"""

import pytest

from wazn.core.error import FormatError, SymbolNotFoundError
from wazn.core.symbols import EPSILON, compatible, symbol_table


def test_epsilon_is_zero():
    table = symbol_table('ab')
    assert table.find(EPSILON) == 0
    assert table.find('a') == 1
    assert table.find('b') == 2
    assert table.symbol(2) == 'b'
    assert len(table) == 3
    assert table.max_id() == 2


def test_add_symbol_is_idempotent():
    table = symbol_table()
    assert table.add_symbol('x') == 1
    assert table.add_symbol('x') == 1
    assert table.add_symbol('y', 7) == 7
    assert table.add_symbol('z') == 8
    assert table.symbols() == ['x', 'y', 'z']


def test_add_symbol_id_clash():
    table = symbol_table('a')
    with pytest.raises(FormatError):
        table.add_symbol('b', 1)


def test_unknown_symbol():
    with pytest.raises(SymbolNotFoundError):
        symbol_table('a').find('b')
    with pytest.raises(SymbolNotFoundError):
        symbol_table('a').symbol(5)


def test_text_form(tmp_path):
    table = symbol_table(['ا', 'ب', '#'])
    assert table.dumps() == '<eps>\t0\nا\t1\nب\t2\n#\t3\n'
    assert symbol_table.loads(table.dumps()) == table

    path = tmp_path / 'syms.txt'
    table.write(path)
    assert symbol_table.read(path) == table


@pytest.mark.parametrize('text', [
    'a\t1\tb\n',
    'a\tone\n',
    'a\t0\n',
    '<eps>\t3\n',
])
def test_malformed_text(text):
    with pytest.raises(FormatError):
        symbol_table.loads(text)


def test_compatible():
    a, b = symbol_table('ab'), symbol_table('ab')
    assert compatible(a, b)
    assert compatible(a, None)
    assert compatible(None, None)
    assert not compatible(a, symbol_table('ba'))
