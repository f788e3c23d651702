# -*- coding: utf-8 -*-
# Copyright (c) 2024 wazn.core contributors
# See LICENSE.rst for details.

"""
Weight algebras for weighted transducers.
"""

import math
import operator
from functools import reduce


__all__ = ["real", "tropical"]


class semiring(object):
    """
    A semiring :math:`(K, \\oplus, \\otimes, \\bar{0}, \\bar{1})`.

    :param name: Short name, used in serialized headers.
    :type name: str
    :param plus: The :math:`\\oplus` operation, associative and commutative.
    :type plus: callable
    :param times: The :math:`\\otimes` operation, associative.
    :type times: callable
    :param zero: Identity of ``plus`` and annihilator of ``times``.
    :type zero: float
    :param one: Identity of ``times``.
    :type one: float
    """
    def __init__(self, name, plus, times, zero, one):
        self.name = name
        self.plus = plus
        self.times = times
        self.zero = zero
        self.one = one

    def sum(self, weights):
        """
        :math:`\\oplus` over an iterable of weights, ``zero`` when empty.
        """
        return reduce(self.plus, weights, self.zero)

    def product(self, weights):
        """
        :math:`\\otimes` over an iterable of weights, ``one`` when empty.
        """
        return reduce(self.times, weights, self.one)

    def is_zero(self, weight):
        return weight == self.zero

    def is_one(self, weight):
        return weight == self.one

    def __repr__(self):
        return f'semiring({self.name})'


#: Probability / counting semiring :math:`(\mathbb{R}_+, +, \times, 0, 1)`.
real = semiring('real', operator.add, operator.mul, 0.0, 1.0)

#: Tropical semiring :math:`(\mathbb{R} \cup \{+\infty\}, \min, +, +\infty, 0)`.
tropical = semiring('tropical', min, operator.add, math.inf, 0.0)


def by_name(name):
    """
    Look up one of the module-level semiring instances by its ``name``.

    :raises ValueError: Unknown semiring name.
    """
    for s in (real, tropical):
        if s.name == name:
            return s
    raise ValueError(f'Unknown semiring: {name}')
