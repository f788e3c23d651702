# -*- coding: utf-8 -*-
# Copyright (c) 2024 wazn.core contributors
# See LICENSE.rst for details.

"""
Exceptions for this library.
"""


class Error(Exception):
    """
    Base class for exceptions in this library.
    """
    pass


class NotRegulatedError(Error):
    """
    Exception raised when the pair weight of a machine cannot be evaluated by
    path enumeration, i.e. the machine is cyclic and no path length bound was
    supplied.
    """


class CyclicMachineError(NotRegulatedError):
    """
    Exception raised when an algorithm requiring a topological order is
    applied to a cyclic machine.
    """


class AlphabetMismatchError(Error):
    """
    Exception raised when two machines combined by a rational operation carry
    incompatible symbol tables.
    """


class SymbolNotFoundError(Error):
    """
    Exception raised when a symbol is not a member of the alphabet in use.
    """


class FormatError(Error):
    """
    Exception raised when a data file (AT&T text, symbol table, inventory,
    archive, kernel or model file) cannot be parsed.
    """


class PatternError(Error):
    """
    Exception raised when a pattern template is malformed.
    """


class EmptyInventoryError(Error):
    """
    Exception raised when a required inventory (patterns, roots) is empty.
    """


class RootFormatError(Error):
    """
    Exception raised when a training root is not made of exactly three
    canonical letters, or a stem is too short to score.
    """


class DuplicateNameError(Error):
    """
    Exception raised when an archive receives two entries with the same name.
    """


class DegenerateLabelsError(Error):
    """
    Exception raised when a classifier is asked to learn from a single class,
    or a class without examples.
    """


class HeaderMismatchError(Error):
    """
    Exception raised when kernel settings recorded in a model disagree with
    the kernel archive it is applied to.
    """


class NotPositiveSemidefiniteError(Error):
    """
    Exception raised when a kernel-induced distance needs the square root of
    a negative quantity, i.e. the kernel matrix is not positive semidefinite.
    """


class AlphabetSizeError(Error):
    """
    Exception raised when a declared alphabet size (``sigma``) is smaller than
    the symbol ids actually used by the machines of an archive.
    """
