"""Three decision procedures for regularity of a submodule W of M, plus the
constructions behind them: (H)-splitting, Baer decomposition, the g-signature,
the frontier test on the M^s_k lattice and simultaneous bases.

A submodule is regular when p^n W meet p^(n+r) M = p^n (W meet p^r M) for all
n, r >= 0.  ``check_K`` tests that directly, ``check_B`` asks every element of
W for a Baer decomposition inside W, and ``check_FPP`` tests a distributivity
identity on the layers M^s_k.  All three agree on every submodule.

Every quantifier is truncated to the box n, r, s, k <= e1: beyond it p^m M is 0
and M[p^k] is M, so the remaining instances repeat ones inside the box.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .module import (
    Element,
    ModuleShape,
    all_elements,
    element_profile,
    exponent,
    g_value,
    height,
    is_regular_element,
    zero,
)
from .reports import BFailure, Certificate, FPPFailure, KFailure, RegularityReport
from .submodule import (
    CosetQuery,
    Submodule,
    enumerate_elements,
    intersect,
    msk,
    solve_coset,
    span,
    sum_submodules,
    whole,
)


@dataclass(frozen=True)
class BaerPart:
    y: Element
    k: int
    s: int


@dataclass(frozen=True)
class BaerDecomposition:
    parts: tuple[BaerPart, ...]

    @property
    def total(self) -> Element:
        out = zero(self.parts[0].y.shape)
        for part in self.parts:
            out = out + part.y
        return out

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return [(part.k, part.s) for part in self.parts]


@dataclass(frozen=True)
class BaerSignature:
    pairs: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class SimultaneousBasis:
    basis: tuple[Element, ...]
    depths: tuple[int, ...]


def decomposition_problems(
    x: Element, d: BaerDecomposition, W: Optional[Submodule] = None
) -> list[str]:
    """Every way in which ``d`` fails to be a Baer decomposition of ``x``; empty when valid."""
    problems = []
    if not d.parts:
        return ["no parts"]
    for i, part in enumerate(d.parts):
        if not part.y:
            problems.append(f"part {i} is zero")
            continue
        if not is_regular_element(part.y):
            problems.append(f"part {i} is not regular")
        if exponent(part.y) != part.k:
            problems.append(f"part {i} has exponent {exponent(part.y)}, claims {part.k}")
        if height(part.y) != part.s:
            problems.append(f"part {i} has height {height(part.y)}, claims {part.s}")
        if W is not None and not W.contains(part.y):
            problems.append(f"part {i} is outside W")
    for a, b in zip(d.parts, d.parts[1:]):
        if not (a.k > b.k and a.s > b.s):
            problems.append(f"(k, s) not strictly decreasing: {a.k, a.s} then {b.k, b.s}")
    if d.parts[-1].k <= 0:
        problems.append("last exponent must be positive")
    if d.total != x:
        problems.append(f"parts sum to {d.total}, not {x}")
    return problems


def is_valid_decomposition(x: Element, d: BaerDecomposition, W: Optional[Submodule] = None) -> bool:
    return not decomposition_problems(x, d, W)


# -- condition (K) ---------------------------------------------------------


def check_K(W: Submodule, cap: int | None = None) -> RegularityReport:
    """Element-wise form of (K): every w in W with h(p^n w) = n + r needs some
    w~ in W with p^n w~ = p^n w and h(w~) = r.

    The reported failure has the lexicographically smallest (n, r), then the
    smallest witness coordinates.
    """
    p = W.shape.prime
    elems = [w for w in enumerate_elements(W, cap) if w]
    for n in range(W.shape.bound):
        failures = []
        for w in elems:
            pw = p**n * w
            if not pw:
                continue
            r = height(pw) - n
            if solve_coset(W, CosetQuery(w, n, r)) is None:
                failures.append((r, w.coords, w))
        if failures:
            r, _, w = min(failures)
            return RegularityReport("K", False, KFailure(n, r, w))
    return RegularityReport("K", True)


# -- condition (FPP) -------------------------------------------------------


def fpp_sides(W: Submodule, s: int, k: int) -> tuple[Submodule, Submodule]:
    """(W meet M^{s+1}_k) + (W meet M^s_{k-1})  and  W meet (M^{s+1}_k + M^s_{k-1})."""
    shape = W.shape
    upper, lower = msk(shape, s + 1, k), msk(shape, s, k - 1)
    left = sum_submodules(intersect(W, upper), intersect(W, lower))
    right = intersect(W, sum_submodules(upper, lower))
    return left, right


def check_FPP(W: Submodule, cap: int | None = None) -> RegularityReport:
    e1 = W.shape.bound
    for s in range(e1 + 1):
        for k in range(1, e1 + 1):
            left, right = fpp_sides(W, s, k)
            if left == right:
                continue
            witness = min(x for x in enumerate_elements(right, cap) if not left.contains(x))
            return RegularityReport("FPP", False, FPPFailure(s, k, witness))
    return RegularityReport("FPP", True)


# -- condition (H) and Baer decompositions ---------------------------------


def h_split(W: Submodule, x: Element) -> Optional[tuple[Element, Element]]:
    """Split an (s, k; s1)-element x of W as y + z with y, z in W,
    h(y) = s1, e(y) = k, h(z) = s and e(z) < k.

    Regular x split as (x, 0).  The y returned is the maximal-height,
    lexicographically smallest solution of p^(k-1) y = p^(k-1) x inside W;
    None means W violates (H) at x.
    """
    if not x:
        raise ValueError("cannot split the zero element")
    if not W.contains(x):
        raise ValueError(f"{x} is not in the submodule")
    if is_regular_element(x):
        return x, zero(x.shape)
    prof = element_profile(x)
    y = solve_coset(W, CosetQuery(x, prof.k - 1, prof.s1))
    if y is None:
        return None
    z = x - y
    assert height(y) == prof.s1 and exponent(y) == prof.k
    assert height(z) == prof.s and exponent(z) < prof.k
    return y, z


def _decompose(W: Submodule, x: Element) -> Optional[list[BaerPart]]:
    split = h_split(W, x)
    if split is None:
        return None
    y, z = split
    k, s1 = exponent(y), height(y)
    if not z:
        return [BaerPart(y, k, s1)]
    tail = _decompose(W, z)
    if tail is None:
        return None
    # Tail parts of height >= s1 get absorbed into the leading part.
    j = 0
    v = y
    while j < len(tail) and tail[j].s >= s1:
        v = v + tail[j].y
        j += 1
    assert is_regular_element(v) and height(v) == s1 and exponent(v) == k
    return [BaerPart(v, k, s1)] + tail[j:]


def baer_decompose(W: Submodule, x: Element) -> Optional[BaerDecomposition]:
    if not x:
        raise ValueError("cannot decompose the zero element")
    if not W.contains(x):
        raise ValueError(f"{x} is not in the submodule")
    parts = _decompose(W, x)
    return None if parts is None else BaerDecomposition(tuple(parts))


def check_B(W: Submodule, cap: int | None = None) -> RegularityReport:
    for x in enumerate_elements(W, cap):
        if x and baer_decompose(W, x) is None:
            return RegularityReport("B", False, BFailure(x))
    return RegularityReport("B", True)


def baer_signature(x: Element) -> BaerSignature:
    """The (k, s) pairs every Baer decomposition of x must carry, read off
    from the jumps of g along x, p x, p^2 x, ..."""
    if not x:
        raise ValueError("the zero element has no signature")
    p, e = x.shape.prime, exponent(x)
    ks = [e] + [j for j in range(e - 1, 0, -1) if g_value(p**j * x) > g_value(p ** (j - 1) * x)]
    return BaerSignature(tuple((k, height(p ** (k - 1) * x) - (k - 1)) for k in ks))


# -- the M^s_k frontier ----------------------------------------------------


def frontier_routes(shape: ModuleShape, x: Element, s: int, k: int) -> tuple[bool, bool]:
    """(lattice route, element route) for membership in M^s_k minus
    (M^{s+1}_k + M^s_{k-1})."""
    inner = sum_submodules(msk(shape, s + 1, k), msk(shape, s, k - 1))
    by_lattice = msk(shape, s, k).contains(x) and not inner.contains(x)
    by_element = bool(x) and is_regular_element(x) and height(x) == s and exponent(x) == k
    return by_lattice, by_element


def frontier_test(shape: ModuleShape, x: Element, s: int, k: int) -> bool:
    if k < 1:
        raise ValueError("k must be positive")
    a, b = frontier_routes(shape, x, s, k)
    if a != b:
        raise AssertionError(f"frontier routes disagree at {x}, s={s}, k={k}")
    return a


# -- simultaneous bases ----------------------------------------------------


def verify_simultaneous_basis(W: Submodule, b: SimultaneousBasis) -> bool:
    shape = W.shape
    p = shape.prime
    if len(b.basis) != shape.rank or len(b.depths) != shape.rank:
        return False
    if any(x.shape != shape for x in b.basis):
        return False
    if any(not 0 <= d <= e for d, e in zip(b.depths, shape.exponents)):
        return False
    if [exponent(x) for x in b.basis] != list(shape.exponents):
        return False
    if span(shape, b.basis) != whole(shape):
        return False
    parts = [p**d * x for d, x in zip(b.depths, b.basis)]
    if span(shape, parts) != W:
        return False
    # Direct sum inside W: the cyclic pieces' orders multiply to |W|.
    order = 1
    for d, e in zip(b.depths, shape.exponents):
        order *= p ** (e - d)
    return order == W.order


def _seed_candidates(W: Submodule) -> list[Element]:
    """Elements x with p^s x a Baer part of some canonical generator of W."""
    shape = W.shape
    p = shape.prime
    seeds: list[Element] = []
    for g in W.generators:
        d = baer_decompose(W, g)
        if d is None:
            continue
        for part in d.parts:
            pre = [x for x in all_elements(shape) if p**part.s * x == part.y]
            pre = [x for x in pre if exponent(x) == part.k + part.s]
            if pre and min(pre) not in seeds:
                seeds.append(min(pre))
    return seeds


def _unit_class_rep(x: Element) -> bool:
    """True when x is the lexicographically smallest generator of <x>."""
    p = x.shape.prime
    mod = p ** exponent(x)
    return all(not (u * x < x) for u in range(2, mod) if u % p)


def find_simultaneous_basis(W: Submodule, cap: int | None = None) -> Optional[SimultaneousBasis]:
    """Depth-first search for x_1..x_n with M = (+)<x_i> and W = (+)<p^d_i x_i>.

    Each x_i is taken up to unit multiples, with exponent e_i, independent of
    the earlier ones.  Its depth is forced: the least d with p^d x_i in W.
    A prefix survives only if W meets <x_1..x_i> in exactly
    <p^d_1 x_1, ..., p^d_i x_i>, which any simultaneous basis satisfies.
    Candidates seeded from Baer decompositions of W's generators go first.
    """
    shape = W.shape
    p = shape.prime
    elems = enumerate_elements(whole(shape), cap)
    seeds = _seed_candidates(W)
    pool = seeds + [x for x in elems if x not in seeds]
    by_exp: dict[int, list[Element]] = {}
    for x in pool:
        if x and _unit_class_rep(x):
            by_exp.setdefault(exponent(x), []).append(x)

    def depth(x: Element) -> int:
        d = 0
        while not W.contains(p**d * x):
            d += 1
        return d

    def search(i: int, chosen: list[Element], depths: list[int], X: Submodule) -> Iterator[SimultaneousBasis]:
        if i == shape.rank:
            yield SimultaneousBasis(tuple(chosen), tuple(depths))
            return
        e = shape.exponents[i]
        for x in by_exp.get(e, []):
            X2 = sum_submodules(X, span(shape, [x]))
            if X2.order != X.order * p**e:
                continue
            d = depth(x)
            parts = [p**dj * xj for dj, xj in zip(depths + [d], chosen + [x])]
            if intersect(W, X2) != span(shape, parts):
                continue
            yield from search(i + 1, chosen + [x], depths + [d], X2)

    for found in search(0, [], [], span(shape, [])):
        assert verify_simultaneous_basis(W, found)
        return found
    return None


# -- certificate re-verification -------------------------------------------


def verify_certificate(W: Submodule, cert: Certificate) -> bool:
    """Confirm a failure certificate by direct element scans of W."""
    shape = W.shape
    p = shape.prime
    x = cert.witness
    if x.shape != shape or not W.contains(x):
        return False
    elems = enumerate_elements(W)
    if isinstance(cert, KFailure):
        target = p**cert.n * x
        if not target or height(target) != cert.n + cert.r:
            return False
        return not any(
            p**cert.n * w == target and height(w) >= cert.r for w in elems
        )
    if isinstance(cert, FPPFailure):
        s, k = cert.s, cert.k
        if not sum_submodules(msk(shape, s + 1, k), msk(shape, s, k - 1)).contains(x):
            return False
        upper = [w for w in elems if msk(shape, s + 1, k).contains(w)]
        lower = [w for w in elems if msk(shape, s, k - 1).contains(w)]
        lower_set = set(lower)
        return not any((x - u) in lower_set for u in upper)
    if isinstance(cert, BFailure):
        from .oracle import oracle_decompose

        return bool(x) and oracle_decompose(W, x) is None
    return False


def regularity_reports(W: Submodule, which: Sequence[str] = ("K", "B", "FPP"), cap: int | None = None) -> dict[str, RegularityReport]:
    checkers = {"K": check_K, "B": check_B, "FPP": check_FPP}
    return {name: checkers[name](W, cap) for name in which}
