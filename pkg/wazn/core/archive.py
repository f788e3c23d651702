# -*- coding: utf-8 -*-
# Copyright (c) 2024 wazn.core contributors
# See LICENSE.rst for details.

"""
FST archives: an ordered bundle of named machines in one file.

The file starts with the magic bytes ``RKFAR1``; each entry follows as a
big-endian ``uint32`` length and the UTF-8 name, then a ``uint32`` length
and the machine's AT&T text.
"""

import logging
import struct

from wazn.core import att
from wazn.core import semiring as sr
from wazn.core.error import DuplicateNameError, FormatError
from wazn.core.util import atomic_write


logger = logging.getLogger(__name__)

MAGIC = b'RKFAR1'

_LENGTH = struct.Struct('>I')


class fst_archive(object):
    """
    Named machines in insertion order.

    :param entries: Initial ``(name, wfst)`` pairs.
    :raises wazn.core.error.DuplicateNameError: A name occurs twice.
    """
    def __init__(self, entries=()):
        self._entries = {}
        for name, t in entries:
            self.add(name, t)

    def add(self, name, t):
        if name in self._entries:
            raise DuplicateNameError(f'Archive already has an entry named {name!r}')
        self._entries[name] = t

    def names(self):
        return list(self._entries)

    def __getitem__(self, name):
        return self._entries[name]

    def __contains__(self, name):
        return name in self._entries

    def __iter__(self):
        return iter(self._entries.items())

    def __len__(self):
        return len(self._entries)

    def dumps(self):
        """
        :rtype: bytes
        """
        chunks = [MAGIC]
        for name, t in self:
            for blob in (name.encode('utf-8'), att.dumps(t).encode('utf-8')):
                chunks.append(_LENGTH.pack(len(blob)))
                chunks.append(blob)
        return b''.join(chunks)

    @classmethod
    def loads(cls, data, semiring=sr.real, symbols=None):
        """
        :param symbols: Symbol table attached to both tapes of every machine.
        :raises wazn.core.error.FormatError: Bad magic or truncated entry.
        """
        if not data.startswith(MAGIC):
            raise FormatError('Not an FST archive (bad magic)')
        pos = len(MAGIC)

        def chunk():
            nonlocal pos
            if pos + _LENGTH.size > len(data):
                raise FormatError(f'Truncated archive at byte {pos}')
            (n,) = _LENGTH.unpack_from(data, pos)
            pos += _LENGTH.size
            if pos + n > len(data):
                raise FormatError(f'Truncated archive at byte {pos}')
            blob = data[pos:pos + n]
            pos += n
            return blob.decode('utf-8')

        archive = cls()
        while pos < len(data):
            name = chunk()
            archive.add(name, att.loads(chunk(), semiring, symbols, symbols))
        return archive

    def write(self, path):
        data = self.dumps()
        with atomic_write(path, 'wb') as fp:
            fp.write(data)
        logger.info(f'Wrote {len(self)} machines ({len(data)} bytes) to {path}')

    @classmethod
    def read(cls, path, semiring=sr.real, symbols=None):
        with open(path, 'rb') as fp:
            return cls.loads(fp.read(), semiring, symbols)

    def __repr__(self):
        return f'fst_archive({len(self)} entries)'


def far_create(docs):
    """
    Package ``(name, wfst)`` pairs.

    :raises wazn.core.error.DuplicateNameError: Names are not unique.
    :rtype: fst_archive
    """
    return fst_archive(docs)


def far_read(archive):
    """
    The ``(name, wfst)`` entries of an archive, or of an archive file, in
    order.

    :param archive: An :py:class:`fst_archive` or a path.
    :rtype: list
    """
    if not isinstance(archive, fst_archive):
        archive = fst_archive.read(archive)
    return list(archive)
