"""The ambient module M = R/p^e1 + ... + R/p^en and per-element invariants."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import TYPE_CHECKING, Iterable

from .valuation import INFINITY, ExtNat, check_prime, valuation

if TYPE_CHECKING:
    from .submodule import Submodule

# Hard ceiling on |M|; enumeration entry points use the smaller Config.order_cap.
MAX_MODULE_ORDER = 2**20


class ShapeMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class ModuleShape:
    """A prime together with the exponents of the cyclic summands.

    Exponents are sorted into non-increasing order on construction, so
    ``ModuleShape(2, (1, 3))`` and ``ModuleShape(2, (3, 1))`` are equal.
    """

    prime: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        check_prime(self.prime)
        exps = tuple(sorted((int(e) for e in self.exponents), reverse=True))
        if not exps:
            raise ValueError("a module shape needs at least one summand")
        if exps[-1] < 1:
            raise ValueError(f"exponents must be >= 1, got {exps}")
        if self.prime ** sum(exps) > MAX_MODULE_ORDER:
            raise ValueError(
                f"module order {self.prime}^{sum(exps)} exceeds {MAX_MODULE_ORDER}"
            )
        object.__setattr__(self, "exponents", exps)

    @property
    def rank(self) -> int:
        return len(self.exponents)

    @property
    def bound(self) -> int:
        """e1, the exponent annihilating all of M."""
        return self.exponents[0]

    @cached_property
    def moduli(self) -> tuple[int, ...]:
        return tuple(self.prime**e for e in self.exponents)

    @property
    def order(self) -> int:
        return self.prime ** sum(self.exponents)

    def element(self, coords: Iterable[int]) -> Element:
        return Element(self, tuple(coords))

    def basis(self) -> list[Element]:
        n = self.rank
        return [Element(self, tuple(int(i == j) for j in range(n))) for i in range(n)]

    def __str__(self) -> str:
        return " + ".join(f"Z/{m}" for m in self.moduli)


@dataclass(frozen=True, order=False)
class Element:
    shape: ModuleShape
    coords: tuple[int, ...]

    def __post_init__(self):
        coords = tuple(self.coords)
        if len(coords) != self.shape.rank:
            raise ShapeMismatchError(
                f"expected {self.shape.rank} coordinates, got {len(coords)}"
            )
        reduced = tuple(int(a) % m for a, m in zip(coords, self.shape.moduli))
        object.__setattr__(self, "coords", reduced)

    def _check(self, other: Element) -> None:
        if not isinstance(other, Element):
            raise TypeError(f"expected an Element, got {type(other).__name__}")
        if other.shape != self.shape:
            raise ShapeMismatchError(f"{self.shape} vs {other.shape}")

    def __add__(self, other: Element) -> Element:
        self._check(other)
        return Element(self.shape, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: Element) -> Element:
        self._check(other)
        return Element(self.shape, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> Element:
        return Element(self.shape, tuple(-a for a in self.coords))

    def __rmul__(self, c: int) -> Element:
        if not isinstance(c, int):
            return NotImplemented
        return Element(self.shape, tuple(c * a for a in self.coords))

    def __bool__(self) -> bool:
        return any(self.coords)

    def __lt__(self, other: Element) -> bool:
        self._check(other)
        return self.coords < other.coords

    def __repr__(self) -> str:
        return f"Element{self.coords}"


@dataclass(frozen=True)
class ElementProfile:
    """(s, k; s1): height, exponent and the excess height of p^(k-1) x."""

    s: int
    k: int
    s1: int


def zero(shape: ModuleShape) -> Element:
    return Element(shape, (0,) * shape.rank)


def add(x: Element, y: Element) -> Element:
    return x + y


def scalar_mul(c: int, x: Element) -> Element:
    return c * x


def exponent(x: Element) -> int:
    p = x.shape.prime
    k = 0
    for a, e in zip(x.coords, x.shape.exponents):
        if a:
            k = max(k, e - valuation(p, a))
    return k


def height(x: Element) -> ExtNat:
    p = x.shape.prime
    vals = [valuation(p, a) for a in x.coords if a]
    return min(vals) if vals else INFINITY


def g_value(x: Element) -> ExtNat:
    return height(x) + exponent(x)


def is_regular_element(x: Element) -> bool:
    h = height(x)
    if h is INFINITY:
        return True
    p = x.shape.prime
    return all(height(p**j * x) == j + h for j in range(1, exponent(x)))


def element_profile(x: Element) -> ElementProfile:
    if not x:
        raise ValueError("the zero element has no (s, k; s1) profile")
    k = exponent(x)
    top = height(x.shape.prime ** (k - 1) * x)
    return ElementProfile(s=height(x), k=k, s1=top - (k - 1))


def height_in(W: Submodule, x: Element) -> ExtNat:
    """Height of ``x`` measured inside ``W``: the largest s with x in p^s W."""
    from .submodule import scale

    if not W.contains(x):
        raise ValueError(f"{x} is not in the submodule")
    if not x:
        return INFINITY
    s = 0
    while scale(W, s + 1).contains(x):
        s += 1
    return s


def all_elements(shape: ModuleShape) -> list[Element]:
    """Every element of M in lexicographic order of coordinates."""
    return [Element(shape, c) for c in product(*(range(m) for m in shape.moduli))]
