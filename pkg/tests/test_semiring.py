# -*- coding: utf-8 -*-
# Copyright (c) 2024 wazn.core contributors
# See LICENSE.rst for details.

"""
Tests for the :py:mod:`wazn.core.semiring` module.
"""

import math

import pytest

from wazn.core import semiring as sr


def test_real_identities():
    assert sr.real.sum([]) == 0.0
    assert sr.real.product([]) == 1.0
    assert sr.real.sum([0.5, 0.25]) == 0.75
    assert sr.real.product([0.5, 0.2]) == pytest.approx(0.1)


def test_tropical_identities():
    assert sr.tropical.sum([]) == math.inf
    assert sr.tropical.product([]) == 0.0
    assert sr.tropical.sum([3.0, 1.0]) == 1.0
    assert sr.tropical.product([3.0, 1.0]) == 4.0


def test_zero_annihilates():
    for K in (sr.real, sr.tropical):
        assert K.is_zero(K.times(K.zero, 2.0))
        assert K.is_one(K.times(K.one, K.one))


def test_by_name():
    assert sr.by_name('real') is sr.real
    assert sr.by_name('tropical') is sr.tropical
    with pytest.raises(ValueError):
        sr.by_name('log')
