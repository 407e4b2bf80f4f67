"""p-adic valuations of integer scalars and the extended naturals used for heights.

The ring is modelled as the integers localized at ``p``; only valuations and
the unit / non-unit split matter, so plain ``int`` arithmetic suffices.
"""

from __future__ import annotations

import enum
from functools import lru_cache
from typing import Union

from sympy import isprime


class _Infinity(enum.Enum):
    """The single point at infinity of the extended naturals.

    Compares above every ``int`` and absorbs addition, so ``height(x) + k``
    works unchanged whether the height is finite or not.
    """

    INFINITY = "inf"

    def __repr__(self) -> str:
        return "INFINITY"

    __str__ = __repr__

    def __lt__(self, other):
        if isinstance(other, int) or other is self:
            return False
        return NotImplemented

    def __le__(self, other):
        if other is self:
            return True
        if isinstance(other, int):
            return False
        return NotImplemented

    def __gt__(self, other):
        if other is self:
            return False
        if isinstance(other, int):
            return True
        return NotImplemented

    def __ge__(self, other):
        if isinstance(other, int) or other is self:
            return True
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, int) or other is self:
            return self
        return NotImplemented

    __radd__ = __add__


INFINITY = _Infinity.INFINITY

ExtNat = Union[int, _Infinity]


def is_infinite(a: ExtNat) -> bool:
    return a is INFINITY


def extnat_add(a: ExtNat, b: ExtNat) -> ExtNat:
    if a is INFINITY or b is INFINITY:
        return INFINITY
    return a + b


@lru_cache(maxsize=None)
def _is_prime(p: int) -> bool:
    return p >= 2 and bool(isprime(p))


def check_prime(p: int) -> int:
    # type check outside the cache: 2.0 and 2 share a cache key
    if not isinstance(p, int) or isinstance(p, bool) or not _is_prime(p):
        raise ValueError(f"expected a prime p >= 2, got {p!r}")
    return p


def valuation(p: int, a: int) -> ExtNat:
    """Largest ``s`` with ``p**s`` dividing ``a``; ``INFINITY`` for ``a == 0``."""
    check_prime(p)
    if a == 0:
        return INFINITY
    a = abs(a)
    s = 0
    while a % p == 0:
        a //= p
        s += 1
    return s


def is_unit(p: int, a: int) -> bool:
    return valuation(p, a) == 0
