# -*- coding: utf-8 -*-
# Copyright (c) 2024 wazn.core contributors
# See LICENSE.rst for details.

import os
import tempfile
from contextlib import contextmanager
from pathlib import Path
from time import perf_counter_ns


#: Environment variable naming a directory searched before the bundled data.
CONFIG_DIR_ENV = 'WAZN_CONFIG_DIR'

DATA_DIR = Path(__file__).resolve().parent / 'data'


def find_data_file(name):
    """
    Locate a bundled data file, preferring a same-named file in the directory
    given by ``$WAZN_CONFIG_DIR`` when that variable is set.

    :param name: File name, e.g. ``patterns.tsv``.
    :type name: str
    :rtype: pathlib.Path
    """
    override = os.environ.get(CONFIG_DIR_ENV)
    if override:
        candidate = Path(override) / name
        if candidate.is_file():
            return candidate
    return DATA_DIR / name


def read_lines(path):
    """
    Non-blank lines of a UTF-8 text file, stripped, with ``#`` comment lines
    skipped.

    :rtype: list
    """
    lines = []
    with open(path, 'r', encoding='utf-8') as fp:
        for line in fp:
            line = line.strip()
            if line and not line.startswith('#'):
                lines.append(line)
    return lines


@contextmanager
def atomic_write(path, mode='w'):
    """
    Open a temporary file next to ``path`` for writing; on a clean exit it
    replaces ``path``, otherwise it is removed and ``path`` is untouched.

    :param mode: ``'w'`` for UTF-8 text or ``'wb'`` for bytes.
    """
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or '.', prefix=f'.{path.name}.', suffix='.tmp')
    try:
        encoding = None if 'b' in mode else 'utf-8'
        with os.fdopen(fd, mode, encoding=encoding) as fp:
            yield fp
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def perf_counter():
    """
    :py:func:`time.perf_counter_ns` in seconds

    :return: the value (in fractional seconds) of a performance counter
    :rtype: float
    """
    return perf_counter_ns() / 1e9
