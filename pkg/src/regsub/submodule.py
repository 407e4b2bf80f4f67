"""Submodules of M in canonical (Howell) form and the lattice operations on them.

Coordinate i lives in Z/p^ei.  Multiplying it by p^(e1-ei) embeds M into
(Z/p^e1)^n, where a Howell form of the generator rows is a unique
representative of the spanned set.  ``canon`` stores those rows mapped back
to M's own coordinates, so equality and hashing are plain tuple comparisons.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from . import howell
from .config import DEFAULT, check_cap
from .module import Element, ModuleShape, ShapeMismatchError, all_elements, height, zero
from .valuation import INFINITY


def _factors(shape: ModuleShape) -> tuple[int, ...]:
    p, E = shape.prime, shape.bound
    return tuple(p ** (E - e) for e in shape.exponents)


def _embed(x: Element) -> howell.Vec:
    return tuple(a * f for a, f in zip(x.coords, _factors(x.shape)))


def _deembed(shape: ModuleShape, v: Sequence[int]) -> Element:
    return Element(shape, tuple(a // f for a, f in zip(v, _factors(shape))))


@dataclass(frozen=True)
class Submodule:
    shape: ModuleShape
    canon: tuple[tuple[int, ...], ...]
    order: int = field(compare=False)
    _form: tuple[howell.Vec, ...] = field(compare=False, repr=False)

    @classmethod
    def _from_rows(cls, shape: ModuleShape, rows: Iterable[Sequence[int]]) -> Submodule:
        p, E = shape.prime, shape.bound
        form = tuple(howell.howell_form(rows, shape.rank, p, E))
        canon = tuple(_deembed(shape, r).coords for r in form)
        return cls(shape, canon, howell.span_order(form, p, E), form)

    @property
    def generators(self) -> list[Element]:
        return [Element(self.shape, r) for r in self.canon]

    @property
    def is_zero(self) -> bool:
        return not self.canon

    def contains(self, x: Element) -> bool:
        if x.shape != self.shape:
            raise ShapeMismatchError(f"{x.shape} vs {self.shape}")
        return not any(howell.reduce(_embed(x), self._form, self.shape.prime**self.shape.bound))

    __contains__ = contains

    def issubset(self, other: Submodule) -> bool:
        return all(other.contains(g) for g in self.generators)

    def reduce(self, x: Element) -> Element:
        """The lexicographically smallest element of the coset x + self."""
        r = howell.reduce(_embed(x), self._form, self.shape.prime**self.shape.bound)
        return _deembed(self.shape, r)

    def elements(self, cap: int | None = None) -> list[Element]:
        return enumerate_elements(self, cap)

    def __add__(self, other: Submodule) -> Submodule:
        return sum_submodules(self, other)

    def __and__(self, other: Submodule) -> Submodule:
        return intersect(self, other)

    def __str__(self) -> str:
        gens = ", ".join(str(r) for r in self.canon) or "0"
        return f"<{gens}> (order {self.order})"


@dataclass(frozen=True)
class SubmoduleLayer:
    """M^s_k = p^s M  intersected with  M[p^k]."""

    s: int
    k: int
    value: Submodule


@dataclass(frozen=True)
class CosetQuery:
    """Find x in W with p^power x = p^power target and height(x) >= min_height."""

    target: Element
    power: int
    min_height: int


def _same_shape(A: Submodule, B: Submodule) -> None:
    if A.shape != B.shape:
        raise ShapeMismatchError(f"{A.shape} vs {B.shape}")


def span(shape: ModuleShape, generators: Iterable[Element]) -> Submodule:
    rows = []
    for g in generators:
        if g.shape != shape:
            raise ShapeMismatchError(f"generator {g} does not live in {shape}")
        rows.append(_embed(g))
    return Submodule._from_rows(shape, rows)


def zero_submodule(shape: ModuleShape) -> Submodule:
    return span(shape, [])


def whole(shape: ModuleShape) -> Submodule:
    return span(shape, shape.basis())


def contains(W: Submodule, x: Element) -> bool:
    return W.contains(x)


@lru_cache(maxsize=1 << 16)
def sum_submodules(A: Submodule, B: Submodule) -> Submodule:
    _same_shape(A, B)
    return Submodule._from_rows(A.shape, A._form + B._form)


def _intersect_by_solving(A: Submodule, B: Submodule) -> Submodule:
    # Zassenhaus: rows (a | a) and (b | 0); the rows with vanishing left half
    # carry exactly the vectors of A meet B in their right half.
    n = A.shape.rank
    rows = [a + a for a in A._form] + [b + (0,) * n for b in B._form]
    form = howell.howell_form(rows, 2 * n, A.shape.prime, A.shape.bound)
    right = [r[n:] for r in form if howell.pivot_col(r) >= n]
    return Submodule._from_rows(A.shape, right)


def intersect_by_enumeration(A: Submodule, B: Submodule) -> Submodule:
    small, big = (A, B) if A.order <= B.order else (B, A)
    return span(A.shape, [x for x in enumerate_elements(small) if big.contains(x)])


@lru_cache(maxsize=1 << 16)
def intersect(A: Submodule, B: Submodule) -> Submodule:
    _same_shape(A, B)
    C = _intersect_by_solving(A, B)
    if C.issubset(A) and C.issubset(B):
        return C
    # Unreachable unless the Howell engine is broken; prefer a slow right answer.
    if min(A.order, B.order) <= DEFAULT.intersect_fallback_order:
        return intersect_by_enumeration(A, B)
    raise ArithmeticError("intersection by solving produced a non-subset")


@lru_cache(maxsize=1 << 16)
def scale(W: Submodule, n: int) -> Submodule:
    if n < 0:
        raise ValueError("scale exponent must be nonnegative")
    p = W.shape.prime
    return span(W.shape, [p**n * g for g in W.generators])


@lru_cache(maxsize=None)
def torsion_layer(shape: ModuleShape, k: int) -> Submodule:
    if k < 0:
        raise ValueError("torsion exponent must be nonnegative")
    p = shape.prime
    return span(shape, [p ** max(e - k, 0) * b for e, b in zip(shape.exponents, shape.basis())])


@lru_cache(maxsize=None)
def power_submodule(shape: ModuleShape, s: int) -> Submodule:
    """p^s M."""
    return scale(whole(shape), s)


@lru_cache(maxsize=None)
def msk(shape: ModuleShape, s: int, k: int) -> Submodule:
    return intersect(power_submodule(shape, s), torsion_layer(shape, k))


def layer(shape: ModuleShape, s: int, k: int) -> SubmoduleLayer:
    return SubmoduleLayer(s, k, msk(shape, s, k))


def _split_sum(A: Submodule, B: Submodule, x: Element) -> tuple[Element, Element]:
    """Write x in A + B as a + b; the caller guarantees membership."""
    n = A.shape.rank
    N = A.shape.prime ** A.shape.bound
    rows = [a + a for a in A._form] + [b + (0,) * n for b in B._form]
    form = howell.howell_form(rows, 2 * n, A.shape.prime, A.shape.bound)
    r = howell.reduce(_embed(x) + (0,) * n, form, N)
    assert not any(r[:n]), "x is not in A + B"
    a = -_deembed(A.shape, r[n:])
    return a, x - a


def solve_coset(W: Submodule, q: CosetQuery) -> Optional[Element]:
    """Maximal-height x in W with p^n x = p^n target and height >= min_height.

    The candidates form the coset target + W[p^n].  Ties at the maximal
    height are broken by the lexicographically smallest coordinates.
    """
    x, n, s = q.target, q.power, q.min_height
    if not W.contains(x):
        raise ValueError(f"target {x} is not in the submodule")
    shape = W.shape
    kernel = intersect(W, torsion_layer(shape, n))
    if kernel.contains(x):
        # zero is a solution, and it has infinite height
        return zero(shape)
    best = None
    for h in range(shape.bound - 1, s - 1, -1):
        if sum_submodules(kernel, power_submodule(shape, h)).contains(x):
            best = h
            break
    if best is None:
        return None
    k, _ = _split_sum(kernel, power_submodule(shape, best), x)
    sol = intersect(kernel, power_submodule(shape, best)).reduce(x - k)
    assert height(sol) == best
    return sol


def enumerate_elements(W: Submodule, cap: int | None = None) -> list[Element]:
    check_cap(W.order, cap)
    shape = W.shape
    vecs = howell.span_elements(W._form, shape.rank, shape.prime, shape.bound)
    return sorted((_deembed(shape, v) for v in vecs), key=lambda e: e.coords)


def enumerate_submodules(shape: ModuleShape, cap: int | None = None) -> list[Submodule]:
    """Every submodule of M exactly once, sorted by (order, canon).

    Breadth-first from the zero submodule, adjoining one element at a time and
    deduplicating on the canonical form.
    """
    check_cap(shape.order, cap, "module")
    elems = [x for x in all_elements(shape) if x]
    start = zero_submodule(shape)
    seen = {start}
    queue = deque([start])
    while queue:
        W = queue.popleft()
        for x in elems:
            if W.contains(x):
                continue
            V = Submodule._from_rows(shape, W._form + (_embed(x),))
            if V not in seen:
                seen.add(V)
                queue.append(V)
    return sorted(seen, key=lambda V: (V.order, V.canon))


__all__ = [
    "CosetQuery",
    "INFINITY",
    "Submodule",
    "SubmoduleLayer",
    "contains",
    "enumerate_elements",
    "enumerate_submodules",
    "intersect",
    "intersect_by_enumeration",
    "layer",
    "msk",
    "power_submodule",
    "scale",
    "solve_coset",
    "span",
    "sum_submodules",
    "torsion_layer",
    "whole",
    "zero_submodule",
]
