# -*- coding: utf-8 -*-
# Copyright (c) 2024 wazn.core contributors
# See LICENSE.rst for details.

"""
The canonical Arabic letter set and the normalization map that folds real
text into it.
"""

from wazn.core.error import FormatError
from wazn.core.symbols import symbol_table
from wazn.core.util import find_data_file


#: Word boundary symbol placed between stems in document machines; it takes
#: the id following the letters in :py:meth:`alphabet.symbols`.
BOUNDARY = '#'

DELETE = 'DELETE'

#: Buckwalter transliteration, ASCII to Arabic.
BUCKWALTER = {
    "'": 'ء', '|': 'آ', '>': 'أ', '&': 'ؤ', '<': 'إ',
    '}': 'ئ', 'A': 'ا', 'b': 'ب', 'p': 'ة', 't': 'ت',
    'v': 'ث', 'j': 'ج', 'H': 'ح', 'x': 'خ', 'd': 'د',
    '*': 'ذ', 'r': 'ر', 'z': 'ز', 's': 'س', '$': 'ش',
    'S': 'ص', 'D': 'ض', 'T': 'ط', 'Z': 'ظ', 'E': 'ع',
    'g': 'غ', '_': 'ـ', 'f': 'ف', 'q': 'ق', 'k': 'ك',
    'l': 'ل', 'm': 'م', 'n': 'ن', 'h': 'ه', 'w': 'و',
    'Y': 'ى', 'y': 'ي', 'F': 'ً', 'N': 'ٌ', 'K': 'ٍ',
    'a': 'َ', 'u': 'ُ', 'i': 'ِ', '~': 'ّ', 'o': 'ْ',
    '`': 'ٰ', '{': 'ٱ',
}

_TO_ARABIC = str.maketrans(BUCKWALTER)
_FROM_ARABIC = str.maketrans({v: k for k, v in BUCKWALTER.items()})


def from_buckwalter(text):
    """
    Transliterate Buckwalter ASCII into Arabic script. Characters outside
    the scheme pass through unchanged.
    """
    return text.translate(_TO_ARABIC)


def to_buckwalter(text):
    """
    Transliterate Arabic script into Buckwalter ASCII.
    """
    return text.translate(_FROM_ARABIC)


def _parse_codepoint(field, lineno):
    field = field.strip()
    if len(field) == 1:
        return field
    try:
        if field[:2] in ('U+', 'u+'):
            return chr(int(field[2:], 16))
        return chr(int(field, 0))
    except ValueError:
        raise FormatError(f'Normalization map line {lineno}: bad codepoint {field!r}')


class alphabet(object):
    """
    Canonical letters plus a normalization map from variant codepoints to
    canonical letters (or deletion).

    :param letters: Canonical letters, in symbol-id order.
    :type letters: str or list
    :param mapping: Variant character to replacement character, or ``None``
        to delete it.
    :type mapping: dict
    """
    def __init__(self, letters, mapping=None):
        self.letters = tuple(letters)
        self._canonical = frozenset(self.letters)
        mapping = mapping or {}
        for src, dst in mapping.items():
            if src in self._canonical:
                raise FormatError(f'Canonical letter {src!r} cannot be remapped')
            if dst is not None and dst not in self._canonical:
                raise FormatError(f'{src!r} maps to non-canonical {dst!r}')
        self.mapping = dict(mapping)
        self._table = {ord(src): dst for src, dst in mapping.items()}

    def __len__(self):
        return len(self.letters)

    def __contains__(self, letter):
        return letter in self._canonical

    def normalize(self, token):
        """
        Map variants, delete diacritics and drop every remaining codepoint
        that is not a canonical letter. Idempotent.

        :rtype: str
        """
        return ''.join(c for c in token.translate(self._table) if c in self._canonical)

    def symbols(self, boundary=True):
        """
        Symbol table with epsilon at 0, the letters at ``1 .. len(self)``
        and, optionally, :py:data:`BOUNDARY` right after them.

        :rtype: wazn.core.symbols.symbol_table
        """
        table = symbol_table(self.letters)
        if boundary:
            table.add_symbol(BOUNDARY)
        return table

    @classmethod
    def load(cls, path):
        """
        Read a ``from<TAB>to-or-DELETE`` normalization map. Identity lines
        declare the canonical letters.

        :raises wazn.core.error.FormatError: Malformed line.
        """
        letters, mapping = [], {}
        with open(path, 'r', encoding='utf-8') as fp:
            for lineno, line in enumerate(fp, 1):
                line = line.rstrip('\n')
                if not line.strip() or line.startswith('#'):
                    continue
                fields = line.split('\t')
                if len(fields) != 2:
                    raise FormatError(f'{path}:{lineno}: expected 2 fields, got {len(fields)}')
                src = _parse_codepoint(fields[0], lineno)
                if fields[1].strip() == DELETE:
                    mapping[src] = None
                    continue
                dst = _parse_codepoint(fields[1], lineno)
                if src == dst:
                    letters.append(src)
                else:
                    mapping[src] = dst
        if not letters:
            raise FormatError(f'{path}: no canonical letters declared')
        return cls(letters, mapping)

    @classmethod
    def default(cls):
        """
        The bundled 28-letter alphabet.
        """
        return cls.load(find_data_file('normalization.tsv'))
