"""Brute-force reference implementations.

Everything here works on raw coordinate tuples and Python sets: spans are
additive closures, heights and exponents are read off explicit sets p^s M and
repeated multiplication.  Nothing is borrowed from the Howell machinery or the
valuation-based formulas, so agreement with the fast paths is real evidence.
Cost is exponential in the module order; keep inputs small.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Optional

from .config import check_cap
from .module import Element, ModuleShape
from .regularity import BaerDecomposition, BaerPart
from .reports import FPPFailure, KFailure, RegularityReport
from .submodule import Submodule

Coords = tuple[int, ...]


def _add(shape: ModuleShape, a: Coords, b: Coords) -> Coords:
    return tuple((x + y) % m for x, y, m in zip(a, b, shape.moduli))


def _mul(shape: ModuleShape, c: int, a: Coords) -> Coords:
    return tuple((c * x) % m for x, m in zip(a, shape.moduli))


def _zero(shape: ModuleShape) -> Coords:
    return (0,) * shape.rank


@lru_cache(maxsize=None)
def _universe(shape: ModuleShape) -> frozenset[Coords]:
    return frozenset(product(*(range(m) for m in shape.moduli)))


def closure(shape: ModuleShape, gens) -> frozenset[Coords]:
    """Additive closure of ``gens`` (integer multiples suffice over Z/p^e)."""
    out = {_zero(shape)}
    frontier = [_zero(shape)]
    gens = [tuple(g) for g in gens]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = _add(shape, a, g)
                if b not in out:
                    out.add(b)
                    nxt.append(b)
        frontier = nxt
    return frozenset(out)


def set_sum(shape: ModuleShape, A: frozenset, B: frozenset) -> frozenset[Coords]:
    out = set(A)
    for b in B:
        if b not in out:
            out.update(_add(shape, a, b) for a in A)
    return frozenset(out)


def elements_of(W: Submodule) -> frozenset[Coords]:
    check_cap(W.shape.order, None, "module")
    return closure(W.shape, W.canon)


@lru_cache(maxsize=None)
def p_power_set(shape: ModuleShape, s: int) -> frozenset[Coords]:
    """p^s M as an explicit set."""
    q = shape.prime**s
    return frozenset(_mul(shape, q, a) for a in _universe(shape))


@lru_cache(maxsize=None)
def torsion_set(shape: ModuleShape, k: int) -> frozenset[Coords]:
    q = shape.prime**k
    z = _zero(shape)
    return frozenset(a for a in _universe(shape) if _mul(shape, q, a) == z)


def msk_set(shape: ModuleShape, s: int, k: int) -> frozenset[Coords]:
    return p_power_set(shape, s) & torsion_set(shape, k)


def oracle_height(shape: ModuleShape, a: Coords) -> Optional[int]:
    """Height by set membership; None stands for infinite height."""
    if a == _zero(shape):
        return None
    s = 0
    while a in p_power_set(shape, s + 1):
        s += 1
    return s


def oracle_exponent(shape: ModuleShape, a: Coords) -> int:
    k, z = 0, _zero(shape)
    while a != z:
        a = _mul(shape, shape.prime, a)
        k += 1
    return k


def oracle_is_regular(shape: ModuleShape, a: Coords) -> bool:
    h = oracle_height(shape, a)
    if h is None:
        return True
    p = shape.prime
    return all(
        oracle_height(shape, _mul(shape, p**j, a)) == j + h
        for j in range(1, oracle_exponent(shape, a))
    )


def oracle_check_K(W: Submodule) -> RegularityReport:
    """Compare p^n W meet p^(n+r) M with p^n (W meet p^r M) as sets over the whole box."""
    shape = W.shape
    p, e1 = shape.prime, shape.bound
    Wset = elements_of(W)
    for n in range(e1 + 1):
        pnW = {_mul(shape, p**n, w): w for w in sorted(Wset)}
        for r in range(e1 - n + 1):
            left = set(pnW) & p_power_set(shape, n + r)
            right = {_mul(shape, p**n, w) for w in Wset & p_power_set(shape, r)}
            bad = sorted(left - right)
            if bad:
                # Report the missing element through its lex-smallest preimage in W.
                pre = min(w for w in Wset if _mul(shape, p**n, w) == bad[0])
                return RegularityReport("K", False, KFailure(n, r, Element(shape, pre)))
    return RegularityReport("K", True)


def oracle_check_FPP(W: Submodule) -> RegularityReport:
    shape = W.shape
    e1 = shape.bound
    Wset = elements_of(W)
    for s in range(e1 + 1):
        for k in range(1, e1 + 1):
            upper, lower = msk_set(shape, s + 1, k), msk_set(shape, s, k - 1)
            left = set_sum(shape, Wset & upper, Wset & lower)
            right = Wset & set_sum(shape, upper, lower)
            bad = sorted(right - left)
            if bad:
                return RegularityReport("FPP", False, FPPFailure(s, k, Element(shape, bad[0])))
    return RegularityReport("FPP", True)


def oracle_regular_elements(W: Submodule) -> list[tuple[Coords, int, int]]:
    """(y, e(y), h(y)) for every nonzero regular y in W."""
    shape = W.shape
    out = []
    for y in elements_of(W):
        if y != _zero(shape) and oracle_is_regular(shape, y):
            out.append((y, oracle_exponent(shape, y), oracle_height(shape, y)))
    return out


def oracle_decompose(W: Submodule, x: Element) -> Optional[BaerDecomposition]:
    """Exhaustive search for x = y_1 + ... + y_m, y_i regular in W, with
    exponents and heights strictly decreasing.

    Only elementary facts prune the search: a sum whose summands have distinct
    exponents has the largest one as its exponent, and likewise its height is
    the smallest summand height.  Candidates are tried by decreasing
    g = h + e, then lexicographically.
    """
    shape = W.shape
    target = tuple(x.coords)
    Wset = elements_of(W)
    if target not in Wset or target == _zero(shape):
        return None
    regs = sorted(oracle_regular_elements(W), key=lambda t: (-(t[1] + t[2]), t[0]))
    neg = lambda a: _mul(shape, -1, a)  # noqa: E731

    def search(rest: Coords, max_k: int, max_s: int) -> Optional[list[BaerPart]]:
        if rest == _zero(shape):
            return []
        e_rest = oracle_exponent(shape, rest)
        h_rest = oracle_height(shape, rest)
        if e_rest >= max_k:
            return None
        for y, k, s in regs:
            if k != e_rest or s >= max_s or s < h_rest:
                continue
            tail = search(_add(shape, rest, neg(y)), k, s)
            if tail is not None:
                return [BaerPart(Element(shape, y), k, s)] + tail
        return None

    parts = search(target, shape.bound + 1, shape.bound + 1)
    return None if parts is None else BaerDecomposition(tuple(parts))


def oracle_submodule_ops(A: Submodule, B: Submodule) -> tuple[frozenset[Coords], frozenset[Coords]]:
    """(A + B, A meet B) as element sets."""
    shape = A.shape
    a, b = elements_of(A), elements_of(B)
    return set_sum(shape, a, b), a & b


def oracle_contains(W: Submodule, x: Element) -> bool:
    return tuple(x.coords) in elements_of(W)
