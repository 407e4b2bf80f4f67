"""Howell normal form for row spans over the chain ring Z/p^E.

Vectors are plain tuples of ints reduced mod p^E.  Every nonzero entry is a
unit times a power of p, so pivots are normalized to exact prime powers and
entries above a pivot p^v are reduced into ``range(p^v)``.  Appending the
annihilator multiple p^(E-v) * row after each pivot gives the Howell property:
the rows whose pivot lies at or after column c span every vector of the span
that vanishes before column c.  With that property the form is unique and
greedy reduction decides membership.
"""

from __future__ import annotations

from typing import Iterable, Sequence

Vec = tuple[int, ...]


def _val(p: int, a: int) -> int:
    v = 0
    while a % p == 0:
        a //= p
        v += 1
    return v


def pivot_col(row: Sequence[int]) -> int:
    for c, a in enumerate(row):
        if a:
            return c
    return -1


def howell_form(rows: Iterable[Sequence[int]], ncols: int, p: int, E: int) -> list[Vec]:
    N = p**E
    work = [tuple(a % N for a in r) for r in rows]
    work = [r for r in work if any(r)]
    out: list[Vec] = []
    for c in range(ncols):
        best, best_v = -1, E
        for i, row in enumerate(work):
            if row[c]:
                v = _val(p, row[c])
                if v < best_v:
                    best, best_v = i, v
        if best < 0:
            continue
        piv = work.pop(best)
        pv = p**best_v
        uinv = pow(piv[c] // pv, -1, N)
        piv = tuple(a * uinv % N for a in piv)
        rest = []
        for row in work:
            if row[c]:
                q = row[c] // pv
                row = tuple((a - q * b) % N for a, b in zip(row, piv))
            if any(row):
                rest.append(row)
        ann = tuple(a * p ** (E - best_v) % N for a in piv)
        if any(ann):
            rest.append(ann)
        work = rest
        out.append(piv)
    # Clear entries above each pivot, top to bottom.
    for i in range(len(out)):
        c = pivot_col(out[i])
        pv = out[i][c]
        for j in range(i):
            q = out[j][c] // pv
            if q:
                out[j] = tuple((a - q * b) % N for a, b in zip(out[j], out[i]))
    return out


def reduce(vec: Sequence[int], form: Sequence[Vec], N: int) -> Vec:
    """Greedy remainder of ``vec`` against a Howell form.

    The remainder is zero exactly when ``vec`` lies in the span.  Within a
    coset of the span it is the lexicographically smallest representative.
    """
    out = [a % N for a in vec]
    for row in form:
        c = pivot_col(row)
        q = out[c] // row[c]
        if q:
            out = [(a - q * b) % N for a, b in zip(out, row)]
    return tuple(out)


def span_order(form: Sequence[Vec], p: int, E: int) -> int:
    order = 1
    for row in form:
        order *= p**E // row[pivot_col(row)]
    return order


def span_elements(form: Sequence[Vec], ncols: int, p: int, E: int) -> list[Vec]:
    """All vectors of the span; each is sum c_i row_i with 0 <= c_i < p^E / pivot_i."""
    N = p**E
    elems: list[Vec] = [(0,) * ncols]
    for row in form:
        count = N // row[pivot_col(row)]
        grown = []
        for base in elems:
            for c in range(count):
                grown.append(tuple((a + c * b) % N for a, b in zip(base, row)))
        elems = grown
    return elems
