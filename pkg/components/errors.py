#!/usr/bin/env python3
"""
Error Types Component
Exception hierarchy shared by the permutation, cluster and series components.
"""


class CpkError(Exception):
    """Base class for every error raised by the kit."""


class InvalidInputError(CpkError, ValueError):
    """Malformed permutation, pattern, word or argument."""


class InvalidPosetError(InvalidInputError):
    """Order relation with a cycle, or elements out of range."""


class DomainError(CpkError, ValueError):
    """Operation called outside the family of patterns it is defined for."""


class ResourceLimitError(CpkError, RuntimeError):
    """Requested size exceeds a configured guard."""
