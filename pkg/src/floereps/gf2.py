"""Linear algebra over the two-element field, with rows packed into Python ints."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


def rank(rows: Iterable[int]) -> int:
    """Rank of a matrix whose rows are bitmasks."""
    pivots: dict[int, int] = {}
    r = 0
    for row in rows:
        while row:
            top = row.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = row
                r += 1
                break
            row ^= p
    return r


@dataclass(frozen=True)
class AffineSpace:
    """Solution set ``particular + span(basis)`` of a linear system.

    ``basis`` is in reduced echelon form with respect to the lowest set
    bit, so bit 0 is treated as the most significant variable when
    enumerating in lexicographic order.
    """

    particular: int
    basis: tuple[int, ...]
    pivots: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def lex_iter(self) -> Iterator[int]:
        """All solutions, lexicographically smallest first (variable 0 first, 0 < 1)."""
        d = len(self.basis)
        for choice in range(1 << d):
            v = self.particular
            for k in range(d):
                if choice >> (d - 1 - k) & 1:
                    v ^= self.basis[k]
            yield v


def _low(x: int) -> int:
    return (x & -x).bit_length() - 1


def solve(equations: Iterable[tuple[int, int]], nvars: int, basis: bool = True) -> AffineSpace | None:
    """Solve ``popcount(mask & x) % 2 == rhs`` for every ``(mask, rhs)``.

    Returns ``None`` when the system is inconsistent. With ``basis=False``
    only a particular solution is computed and the basis is left empty.
    """
    piv: dict[int, tuple[int, int]] = {}
    for mask, rhs in equations:
        rhs &= 1
        while mask:
            lo = _low(mask)
            hit = piv.get(lo)
            if hit is None:
                piv[lo] = (mask, rhs)
                break
            mask ^= hit[0]
            rhs ^= hit[1]
        else:
            if rhs:
                return None
    # back-substitute to reduced echelon form
    order = sorted(piv, reverse=True)
    for lo in order:
        mask, rhs = piv[lo]
        rest = mask & ~(1 << lo)
        while rest:
            b = _low(rest)
            rest &= rest - 1
            if b in piv:
                m2, r2 = piv[b]
                mask ^= m2
                rhs ^= r2
        piv[lo] = (mask, rhs)
    # after reduction, each pivot row mentions only its pivot and free variables
    particular = 0
    for lo, (mask, rhs) in piv.items():
        if rhs:
            particular |= 1 << lo
    if not basis:
        return AffineSpace(particular, (), ())
    free = [v for v in range(nvars) if v not in piv]
    basis = []
    for f in free:
        vec = 1 << f
        for lo, (mask, _) in piv.items():
            if mask >> f & 1:
                vec |= 1 << lo
        basis.append(vec)
    # reduce the null basis so each vector has a distinct lowest bit and
    # the particular solution is zero at those bits
    reduced: list[int] = []
    for vec in basis:
        for r in reduced:
            if vec >> _low(r) & 1:
                vec ^= r
        if vec:
            for k, r in enumerate(reduced):
                if r >> _low(vec) & 1:
                    reduced[k] = r ^ vec
            reduced.append(vec)
    reduced.sort(key=_low)
    # full reduction: clear each pivot bit from all other vectors
    for k, r in enumerate(reduced):
        pk = _low(r)
        for t in range(len(reduced)):
            if t != k and reduced[t] >> pk & 1:
                reduced[t] ^= r
    for r in reduced:
        if particular >> _low(r) & 1:
            particular ^= r
    return AffineSpace(particular, tuple(reduced), tuple(_low(r) for r in reduced))
