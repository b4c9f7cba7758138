"""Filtered changes of basis, simplification, and the invariants read from it.

The simplifier works on a mutable index-based copy of a complex. A basis
change ``x_n -> x_n + x_l`` conjugates the differential: the row of ``n``
gains the row of ``l``, then the column of ``l`` gains the column of ``n``.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterator, Sequence

from .complex import (
    BifilteredComplex,
    Generator,
    arrow_kind,
    horizontal_rank,
    vertical_rank,
)
from .errors import InvariantViolation, NoRepresentative, Undecided


@dataclass(frozen=True)
class BasisChange:
    """The substitution ``x_n -> x_n + x_l``."""

    n: str
    l: str

    def to_list(self) -> list[str]:
        return [self.n, self.l]


def _check_change(a: Generator, b: Generator) -> None:
    if b.i > a.i or b.j > a.j:
        raise ValueError(f"illegal change {a.id} -> {a.id} + {b.id}: {b.fl} is not <= {a.fl}")
    if a.gr is not None and b.gr is not None and a.gr != b.gr:
        raise ValueError(f"illegal change {a.id} -> {a.id} + {b.id}: gradings {a.gr} != {b.gr}")
    if a.id == b.id:
        raise ValueError("a generator cannot be added to itself")


def change_basis(c: BifilteredComplex, bc: BasisChange) -> BifilteredComplex:
    return apply_changes(c, [bc])


def apply_changes(c: BifilteredComplex, changes: Sequence[BasisChange]) -> BifilteredComplex:
    """Replay a list of basis changes."""
    w = _Work(c)
    for bc in changes:
        if bc.n not in w.index or bc.l not in w.index:
            raise ValueError(f"unknown generator in change {bc.n} -> {bc.n} + {bc.l}")
        _check_change(c.gen(bc.n), c.gen(bc.l))
        w.add(w.index[bc.n], w.index[bc.l])
    return w.freeze()


class _ChainKey:
    """A tuple of role keys produced on demand, compared lexicographically."""

    __slots__ = ("items", "it")

    def __init__(self, it: Iterator[tuple[int, int]]):
        self.items: list[tuple[int, int]] = []
        self.it = it

    def _at(self, d: int) -> tuple[int, int] | None:
        while len(self.items) <= d:
            nxt = next(self.it, None)
            if nxt is None:
                return None
            self.items.append(nxt)
        return self.items[d]

    def _cmp(self, other: _ChainKey) -> int:
        d = 0
        while True:
            a, b = self._at(d), other._at(d)
            if a is None or b is None:
                return (a is not None) - (b is not None)
            if a != b:
                return -1 if a < b else 1
            d += 1

    def __eq__(self, other) -> bool:
        return self._cmp(other) == 0

    def __lt__(self, other) -> bool:
        return self._cmp(other) < 0

    def __gt__(self, other) -> bool:
        return self._cmp(other) > 0


class _Work:
    """Mutable adjacency form of a complex used during simplification."""

    def __init__(self, c: BifilteredComplex, log: list | None = None, hv_only: bool = False):
        # with hv_only diagonal arrows are discarded as they appear, and
        # only changes within a row or a column are allowed
        self.hv_only = hv_only
        # pivot search: local first, whole-level scan as the slower fallback
        self.local_pivots = True
        self.passes = 0
        # fixed tie-break: rank of the id in sorted order
        self.ids = [g.id for g in c.generators]
        self.index = {gid: k for k, gid in enumerate(self.ids)}
        order = sorted(range(len(self.ids)), key=lambda k: self.ids[k])
        self.rank = [0] * len(self.ids)
        for r, k in enumerate(order):
            self.rank[k] = r
        self.gens = list(c.generators)
        self.i = [g.i for g in c.generators]
        self.j = [g.j for g in c.generators]
        self.gr = [g.gr for g in c.generators]
        n = len(self.ids)
        self.out: list[set[int]] = [set() for _ in range(n)]
        self.inn: list[set[int]] = [set() for _ in range(n)]
        for s, t in c.arrows:
            a, b = self.index[s], self.index[t]
            if hv_only and self.i[a] != self.i[b] and self.j[a] != self.j[b]:
                continue
            self.out[a].add(b)
            self.inn[b].add(a)
        self.log = log
        self.heap: list | None = None
        self.transposed = False
        # crossing arrows per component, maintained while splitting
        self.cross: dict[int, set[tuple[int, int]]] | None = None
        self.comp: list[int] = []
        self.dirty: set[int] = set()

    def n(self) -> int:
        return len(self.ids)

    def toggle(self, s: int, t: int) -> None:
        if self.hv_only and self.i[s] != self.i[t] and self.j[s] != self.j[t]:
            return
        if self.cross is not None and self.comp[s] != self.comp[t]:
            for c in (self.comp[s], self.comp[t]):
                self.cross.setdefault(c, set()).symmetric_difference_update({(s, t)})
                self.dirty.add(c)
        if t in self.out[s]:
            self.out[s].discard(t)
            self.inn[t].discard(s)
        else:
            self.out[s].add(t)
            self.inn[t].add(s)
            if self.heap is not None and self.i[s] == self.i[t]:
                heapq.heappush(self.heap, (self.j[s] - self.j[t], self.rank[s], self.rank[t], s, t))

    def add(self, n: int, l: int) -> None:
        """Basis change x_n -> x_n + x_l (legality checked)."""
        if n == l or self.i[l] > self.i[n] or self.j[l] > self.j[n]:
            raise InvariantViolation(f"illegal basis change {self.ids[n]} += {self.ids[l]}")
        if self.hv_only and self.i[l] != self.i[n] and self.j[l] != self.j[n]:
            raise InvariantViolation(f"diagonal basis change {self.ids[n]} += {self.ids[l]} without diagonals")
        if self.gr[n] is not None and self.gr[l] is not None and self.gr[n] != self.gr[l]:
            raise InvariantViolation(f"grading mismatch in basis change {self.ids[n]} += {self.ids[l]}")
        for t in list(self.out[l]):
            self.toggle(n, t)
        for z in list(self.inn[n]):
            self.toggle(z, l)
        if self.log is not None:
            self.log.append(BasisChange(self.ids[n], self.ids[l]))

    def swap_axes(self) -> None:
        self.i, self.j = self.j, self.i
        self.transposed = not self.transposed

    def vertical_out(self, k: int) -> list[int]:
        return [t for t in self.out[k] if self.i[t] == self.i[k]]

    def vertical_in(self, k: int) -> list[int]:
        return [s for s in self.inn[k] if self.i[s] == self.i[k]]

    def is_vertically_simplified(self) -> bool:
        return all(len(self.vertical_out(k)) + len(self.vertical_in(k)) <= 1 for k in range(self.n()))

    def vertical_pass(self) -> int:
        """Cancel vertical arrows shortest first; returns the number of changes made.

        Changes between two generators at the same filtration level also
        act on the horizontal arrows. Those are chosen in the direction
        that the horizontal pairing tolerates and are followed by the
        matching change on the horizontal partners, see :meth:`_cadd`.
        """
        made = 0
        done = [False] * self.n()
        self.levels: dict[tuple[int, int], list[int]] = {}
        for k in range(self.n()):
            self.levels.setdefault((self.i[k], self.j[k]), []).append(k)
        self.heap = []
        for s in range(self.n()):
            for t in self.out[s]:
                if self.i[s] == self.i[t]:
                    self.heap.append((self.j[s] - self.j[t], self.rank[s], self.rank[t], s, t))
        heapq.heapify(self.heap)
        try:
            while self.heap:
                _, _, _, x, y = heapq.heappop(self.heap)
                if done[x] or done[y] or y not in self.out[x]:
                    continue
                x0, y0 = x, y
                x, y = self._pick_pivot(x, y, done)
                # other vertical targets of x: y -> y + w
                for w in sorted(self.vertical_out(x), key=lambda k: self.rank[k]):
                    if w != y and w in self.out[x] and self._legal(y, w):
                        made += self._cadd(y, w)
                # other vertical sources of y: z -> z + x
                for z in sorted(self.vertical_in(y), key=lambda k: self.rank[k]):
                    if z != x and y in self.out[z] and self._legal(z, x):
                        made += self._cadd(z, x)
                if self.vertical_in(x) or self.vertical_out(y):
                    # a compensating change disturbed the queue order; a later pass retries
                    continue
                done[x] = done[y] = True
                if (x0, y0) != (x, y) and not done[x0] and not done[y0] and y0 in self.out[x0]:
                    # the popped arrow was not used as the pivot; keep it queued
                    heapq.heappush(self.heap, (self.j[x0] - self.j[y0], self.rank[x0], self.rank[y0], x0, y0))
        finally:
            self.heap = None
        return made

    def _role(self, k: int, along_i: bool) -> tuple[str, int, int | None]:
        """Role of k for the arrows along one axis.

        ``along_i`` selects arrows with the same i (the vertical ones in
        the current orientation), otherwise arrows with the same j. The
        result is ``("src", length, partner)``, ``("tgt", length,
        partner)``, ``("free", 0, None)`` or ``("mixed", 0, None)`` when
        k has several such arrows.
        """
        same, other = (self.i, self.j) if along_i else (self.j, self.i)
        outs = [t for t in self.out[k] if same[t] == same[k]]
        ins = [s for s in self.inn[k] if same[s] == same[k]]
        if len(outs) + len(ins) > 1:
            return ("mixed", 0, None)
        if outs:
            return ("src", other[k] - other[outs[0]], outs[0])
        if ins:
            return ("tgt", other[ins[0]] - other[k], ins[0])
        return ("free", 0, None)

    @staticmethod
    def _key_of_role(role: tuple[str, int, int | None]) -> tuple[int, int]:
        """``n -> n + l`` keeps the pairing along an axis when key(l) <= key(n)."""
        kind, length, _ = role
        if kind == "tgt":
            return (0, length)
        if kind == "src":
            return (2, -length)
        return (1, 0)

    def _role_key(self, k: int, along_i: bool) -> tuple[int, int]:
        return self._key_of_role(self._role(k, along_i))

    def _pivot_chain(self, k: int) -> Iterator[tuple[int, int]]:
        along_i = False
        seen = set()
        while k is not None and k not in seen and len(seen) < self.n():
            seen.add(k)
            role = self._role(k, along_i)
            yield self._key_of_role(role)
            k = role[2]
            along_i = not along_i

    def _pivot_key(self, k: int) -> _ChainKey:
        """Role keys along the chain of partners that :meth:`_cadd` would visit.

        Ties between equal roles are settled by the partner, which
        receives the compensating change, then by its partner, and so on.
        The chain is walked lazily, only as far as a comparison needs.
        """
        return _ChainKey(self._pivot_chain(k))

    def _cadd(self, n: int, l: int) -> int:
        """``add(n, l)`` followed by compensating changes.

        A change between two generators of one level also acts on the
        arrows of the other axis. For two sources of such arrows the
        targets are combined the same way, and for two targets the
        sources are, which restores the pairing. If the partners again
        share a level the same repair continues along the first axis,
        and so on. Returns the number of changes made.
        """
        made = 0
        along_i = False
        for _ in range(self.n()):
            if (self.i[n], self.j[n]) != (self.i[l], self.j[l]):
                self.add(n, l)
                return made + 1
            rn, _, pn = self._role(n, along_i)
            rl, _, pl = self._role(l, along_i)
            self.add(n, l)
            made += 1
            if rn != rl or rn not in ("src", "tgt") or pn == pl or not self._legal(pn, pl):
                return made
            n, l = pn, pl
            along_i = not along_i
        return made

    def _pick_pivot(self, x: int, y: int, done: list[bool]) -> tuple[int, int]:
        """Choose among equivalent pivots at the same two levels.

        The compensating changes around a pivot ``x -> y`` touch the other
        sources of y and the other targets of x at the same levels. So x
        must have the least :meth:`_pivot_key` among the sources of y and
        y the greatest key among the targets of x; then every such change
        runs in the direction that the other axis allows. The pair is
        found by alternating the two choices, falling back to a scan of
        the whole level if that does not settle. With ``local_pivots``
        off the scan is always used; it is slower but settles on a single
        global order per level.
        """
        la = (self.i[x], self.j[x])
        lb = (self.i[y], self.j[y])

        def at(k: int, lev: tuple[int, int]) -> bool:
            return not done[k] and (self.i[k], self.j[k]) == lev

        def least(ks: list[int]) -> int:
            return ks[0] if len(ks) == 1 else min(ks, key=lambda k: (self._pivot_key(k), self.rank[k]))

        def greatest(ks: list[int]) -> int:
            return ks[0] if len(ks) == 1 else max(ks, key=lambda k: (self._pivot_key(k), -self.rank[k]))

        for _ in range(8 if self.local_pivots else 0):
            xs = least([z for z in self.inn[y] if at(z, la)])
            ys = greatest([t for t in self.out[xs] if at(t, lb)])
            if (xs, ys) == (x, y):
                return x, y
            x, y = xs, ys
        rows = [s for s in self.levels[la] if at(s, la) and any(at(t, lb) for t in self.out[s])]
        xs = least(rows)
        return xs, greatest([t for t in self.out[xs] if at(t, lb)])

    def horizontal_pass(self) -> int:
        self.swap_axes()
        try:
            return self.vertical_pass()
        finally:
            self.swap_axes()

    def is_horizontally_simplified(self) -> bool:
        self.swap_axes()
        try:
            return self.is_vertically_simplified()
        finally:
            self.swap_axes()

    def hv_components(self) -> list[int]:
        """Component label of each generator in the horizontal/vertical arrow graph."""
        parent = list(range(self.n()))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for s in range(self.n()):
            for t in self.out[s]:
                if self.i[s] == self.i[t] or self.j[s] == self.j[t]:
                    a, b = find(s), find(t)
                    if a != b:
                        parent[max(a, b)] = min(a, b)
        return [find(k) for k in range(self.n())]

    def _vertically_free(self) -> int:
        free = [k for k in range(self.n()) if not self.vertical_out(k) and not self.vertical_in(k)]
        if len(free) != 1:
            raise InvariantViolation(f"expected one vertically distinguished element, found {len(free)}")
        return free[0]

    def _strictly_below(self, lo: int, hi: int) -> bool:
        return (
            self.i[lo] < self.i[hi]
            and self.j[lo] < self.j[hi]
            and (self.gr[lo] is None or self.gr[hi] is None or self.gr[lo] == self.gr[hi])
        )

    def _legal(self, n: int, l: int) -> bool:
        return self.i[l] <= self.i[n] and self.j[l] <= self.j[n]

    def _legal_change(self, n: int, l: int) -> bool:
        return (
            n != l
            and self._legal(n, l)
            and (self.gr[n] is None or self.gr[l] is None or self.gr[n] == self.gr[l])
        )

    def split_summands(self, max_rounds: int | None = None, core_only: bool = False) -> int:
        """Remove arrows joining different horizontal/vertical components.

        Components are split off one at a time. When a component ``B`` has
        crossing arrows only leaving it (or only entering it), the change
        ``I + N`` with ``N`` mapping ``B`` to the rest (resp. the rest to
        ``B``) conjugates the differential exactly linearly, and it keeps
        every arrow inside ``B`` and inside the rest. Removing the
        crossing arrows is then a linear system over the two-element
        field, with ``N`` restricted to filtered changes. Returns the
        number of crossing arrows left.

        With ``core_only`` only the component of the vertically
        distinguished element is freed: just its neighbours are peeled,
        and the count returned is of the arrows still crossing into it.
        """
        comp = self.hv_components()
        members: dict[int, list[int]] = {}
        for k, c in enumerate(comp):
            members.setdefault(c, []).append(k)
        self.comp = comp
        self.cross = {}
        for x in range(self.n()):
            for y in self.out[x]:
                if comp[x] != comp[y]:
                    self.cross.setdefault(comp[x], set()).add((x, y))
                    self.cross.setdefault(comp[y], set()).add((x, y))

        def total() -> int:
            return sum(len(v) for v in self.cross.values()) // 2

        core = comp[self._vertically_free()] if core_only else None

        def remaining() -> int:
            return total() if core is None else len(self.cross.get(core, ()))

        def neighbours(c: int) -> list[tuple[int, int]]:
            found = {comp[x] if comp[x] != c else comp[y] for x, y in self.cross.get(c, ())}
            return [(self.rank[d], d) for d in found]

        try:
            failed: set[int] = set()
            if core is None:
                heap = [(self.rank[c], c) for c, v in self.cross.items() if v]
            else:
                heap = neighbours(core)
            heapq.heapify(heap)
            rounds = 0
            limit = max_rounds if max_rounds is not None else 4 * self.n() + 4
            while rounds < limit:
                rounds += 1
                self.dirty = set()
                progress = False
                while heap:
                    _, c = heapq.heappop(heap)
                    arrows = self.cross.get(c)
                    if not arrows or c in failed:
                        continue
                    leaves = any(comp[x] == c for x, _ in arrows)
                    enters = any(comp[y] == c for _, y in arrows)
                    if leaves and enters:
                        failed.add(c)
                        continue
                    self.dirty = set()
                    if self._peel(set(members[c]), leaves, crossing=arrows):
                        progress = True
                    else:
                        failed.add(c)
                    for d in self.dirty:
                        if core is not None:
                            if d == core:
                                for item in neighbours(core):
                                    failed.discard(item[1])
                                    heapq.heappush(heap, item)
                        elif self.cross.get(d):
                            failed.discard(d)
                            heapq.heappush(heap, (self.rank[d], d))
                    if core is not None and not self.cross.get(core):
                        return 0
                left = remaining()
                if not left:
                    return 0
                # arrows both ways: the quadratic term is ignored, so keep a
                # step only when it lowers the number of crossing arrows
                if core is None:
                    candidates = [c for c, v in self.cross.items() if v]
                else:
                    candidates = [core] + [d for _, d in neighbours(core)]
                for c in sorted(candidates, key=lambda c: self.rank[c]):
                    for leaving in (True, False):
                        self.dirty = set()
                        applied = self._peel(set(members[c]), leaving, only_crossing=True, crossing=self.cross[c])
                        if applied is None:
                            continue
                        if (
                            remaining() < left
                            and self.is_vertically_simplified()
                            and self.is_horizontally_simplified()
                            and self.hv_components() == comp
                        ):
                            progress = True
                            break
                        for n, l in reversed(applied):
                            self.add(n, l)
                        if self.log is not None:
                            del self.log[-2 * len(applied):]
                    if progress:
                        break
                if not progress:
                    break
                failed = set()
                if core is None:
                    heap = [(self.rank[c], c) for c, v in self.cross.items() if v]
                else:
                    if not self.cross.get(core):
                        return 0
                    heap = neighbours(core)
                heapq.heapify(heap)
            return remaining()
        finally:
            self.cross = None
            self.dirty = set()

    def _peel(self, inside: set[int], leaving: bool, only_crossing: bool = False, crossing=None):
        """Split off a component whose crossing arrows all point one way.

        With ``leaving`` the unknowns are the changes ``b -> b + k`` for b
        inside and k outside, otherwise ``k -> k + b``. Returns whether a
        solution was found and applied. With ``only_crossing`` the
        component may also have arrows the other way; only arrows in the
        ``leaving`` direction are constrained, and the list of applied
        changes (or ``None``) is returned.

        Unknowns far from the crossing arrows are left at zero unless the
        nearer system is inconsistent.
        """
        from .gf2 import solve

        def is_var(n: int, l: int) -> bool:
            if leaving:
                ok = n in inside and l not in inside
            else:
                ok = l in inside and n not in inside
            return ok and self._legal_change(n, l)

        def constrained(x: int, y: int) -> bool:
            if (x in inside) == (y in inside):
                return False
            return not only_crossing or (x in inside) == leaving

        def unknowns(x: int, y: int) -> list[tuple[int, int]]:
            out = [(x, z) for z in self.inn[y] if is_var(x, z)]
            out += [(z, y) for z in self.out[x] if is_var(z, y)]
            return out

        if crossing is None:
            crossing = [(x, y) for x in range(self.n()) for y in self.out[x]]
        start = [(x, y) for x, y in crossing if constrained(x, y)]
        # iterative deepening: solve with the unknowns near the crossing
        # arrows first; every position those unknowns touch is constrained,
        # so a solution never creates crossing arrows elsewhere
        active: set[tuple[int, int]] = set()
        for pos in start:
            active.update(unknowns(*pos))
        while True:
            positions = set(start)
            for n, l in active:
                positions.update(pos for pos in [(n, t) for t in self.out[l]] + [(w, l) for w in self.inn[n]] if constrained(*pos))
            var_index = {pair: v for v, pair in enumerate(sorted(active))}
            rows = []
            grow: set[tuple[int, int]] = set()
            for x, y in positions:
                mask = 0
                for pair in unknowns(x, y):
                    v = var_index.get(pair)
                    if v is None:
                        grow.add(pair)
                    else:
                        mask ^= 1 << v
                rows.append((mask, 1 if y in self.out[x] else 0))
            sol = solve(rows, len(var_index), basis=False)
            if sol is not None or not grow:
                break
            active |= grow
        if sol is None:
            return None if only_crossing else False
        chosen = [pair for pair, v in var_index.items() if sol.particular >> v & 1]
        chosen.sort(key=lambda m: (self.rank[m[0]], self.rank[m[1]]))
        for n, l in chosen:
            self.add(n, l)
        return chosen if only_crossing else True

    def freeze(self) -> BifilteredComplex:
        assert not self.transposed
        arrows = frozenset((self.ids[s], self.ids[t]) for s in range(self.n()) for t in self.out[s])
        return BifilteredComplex(tuple(self.gens), arrows)


@dataclass(frozen=True)
class SimplificationFailure:
    """Returned when alternating passes do not reach a simultaneously simplified basis."""

    reason: str
    passes: int
    last: BifilteredComplex

    def __bool__(self) -> bool:
        return False


def _require_rank(c: BifilteredComplex, vertical: bool = True, horizontal: bool = False) -> None:
    if vertical:
        r = vertical_rank(c)
        if r != 1:
            raise ValueError(f"vertical homology has rank {r}, expected 1")
    if horizontal:
        r = horizontal_rank(c)
        if r != 1:
            raise ValueError(f"horizontal homology has rank {r}, expected 1")


def vertically_simplify(c: BifilteredComplex, log: list | None = None) -> BifilteredComplex:
    _require_rank(c, vertical=True)
    w = _Work(c, log)
    w.vertical_pass()
    return w.freeze()


def horizontally_simplify(c: BifilteredComplex, log: list | None = None) -> BifilteredComplex:
    _require_rank(c, vertical=False, horizontal=True)
    w = _Work(c, log)
    w.horizontal_pass()
    return w.freeze()


def simultaneous_simplify(
    c: BifilteredComplex,
    log: list | None = None,
    check_ranks: bool = True,
    split: bool = True,
    core_only: bool = False,
    hv_only: bool = False,
) -> BifilteredComplex | SimplificationFailure:
    """Alternate vertical and horizontal passes until both properties hold.

    Pivots are first chosen locally; if that stalls, or ``2 * len(c)``
    passes go by, the run is repeated from the start with the whole-level
    pivot scan, and if that also fails a failure value is returned. With
    ``split`` the diagonal arrows joining different horizontal/vertical
    components are then removed by filtered changes where the linear
    peel succeeds; ``core_only`` restricts this to the arrows touching
    the component of the vertically distinguished element.

    With ``hv_only`` the complex is taken modulo diagonal arrows: they are
    dropped on input and whenever a change creates one. The result is
    then already a direct sum of its horizontal/vertical components and
    no splitting is done.
    """
    if check_ranks:
        _require_rank(c, vertical=True, horizontal=True)
    limit = 2 * max(1, len(c))
    mark = len(log) if log is not None else 0
    passes = 0
    for local in (True, False):
        if log is not None:
            del log[mark:]
        w = _Work(c, log, hv_only=hv_only)
        w.local_pivots = local
        if _alternate(w, limit):
            if split and not hv_only:
                w.split_summands(core_only=core_only)
            return w.freeze()
        passes += w.passes
    return SimplificationFailure(
        f"no simultaneously simplified basis after {passes} passes", passes, w.freeze()
    )


def _alternate(w: _Work, limit: int) -> bool:
    """Vertical and horizontal passes until both hold, a pass pair changes
    nothing, or ``limit`` passes are used; the count is left in ``w.passes``."""
    w.passes = 0
    while not (w.is_vertically_simplified() and w.is_horizontally_simplified()):
        if w.passes >= limit:
            return False
        made = w.vertical_pass() + w.horizontal_pass()
        w.passes += 2
        if not made and not (w.is_vertically_simplified() and w.is_horizontally_simplified()):
            return False
    return True


def _distinguished(c: BifilteredComplex, axis: str) -> Generator:
    touched = set()
    for s, t in c.arrows:
        k = arrow_kind(c.gen(s), c.gen(t))
        if k == axis:
            touched.add(s)
            touched.add(t)
    free = [g for g in c.generators if g.id not in touched]
    if len(free) != 1:
        raise InvariantViolation(f"expected one {axis}ly distinguished element, found {len(free)}")
    return free[0]


def vertically_distinguished(c: BifilteredComplex) -> Generator:
    """The generator with no vertical arrows in a vertically simplified basis."""
    return _distinguished(c, "vertical")


def horizontally_distinguished(c: BifilteredComplex) -> Generator:
    return _distinguished(c, "horizontal")


def _simplified(c: BifilteredComplex) -> BifilteredComplex:
    out = simultaneous_simplify(c)
    if isinstance(out, SimplificationFailure):
        raise Undecided(out.reason)
    return out


@dataclass(frozen=True)
class Trace:
    """The alternating path from the vertically distinguished element."""

    path: tuple[str, ...]
    full: tuple[int, ...]

    @property
    def steps(self) -> list[int]:
        return list(self.full[: len(self.full) // 2])


def trace(c: BifilteredComplex) -> Trace:
    """Follow horizontal then vertical arrows from x0 in a simplified basis."""
    x0 = vertically_distinguished(c)
    horiz: dict[str, list[tuple[str, str]]] = {}
    vert: dict[str, list[tuple[str, str]]] = {}
    for s, t in c.arrows:
        k = arrow_kind(c.gen(s), c.gen(t))
        if k == "horizontal":
            horiz.setdefault(s, []).append((s, t))
            horiz.setdefault(t, []).append((s, t))
        elif k == "vertical":
            vert.setdefault(s, []).append((s, t))
            vert.setdefault(t, []).append((s, t))
    path = [x0.id]
    full: list[int] = []
    cur = x0.id
    while True:
        k = len(path)  # index of the next element
        table = horiz if k % 2 else vert
        arrows = table.get(cur, [])
        if len(arrows) > 1:
            raise InvariantViolation(f"{cur} has {len(arrows)} arrows of one kind; basis not simplified")
        if not arrows:
            break
        s, t = arrows[0]
        nxt = t if s == cur else s
        a, b = c.gen(cur), c.gen(nxt)
        if k % 2:
            length = abs(a.i - b.i)
            # positive when the arrow leaves the new element x_k
            full.append(length if s == nxt else -length)
        else:
            length = abs(a.j - b.j)
            # positive when the arrow enters x_k
            full.append(length if t == nxt else -length)
        path.append(nxt)
        cur = nxt
        if len(path) > len(c):
            raise InvariantViolation("trace revisits a generator")
    if len(path) % 2 == 0:
        raise InvariantViolation(f"trace ends at odd position {len(path) - 1} ({cur})")
    if full != full[::-1]:
        raise InvariantViolation(f"traced sequence {full} is not palindromic")
    return Trace(tuple(path), tuple(full))


def reduced_representative(c: BifilteredComplex) -> list[int]:
    """Signed step sequence of the class of ``c``."""
    return trace(_simplified(c)).steps


def reduced_complex(c: BifilteredComplex, simplified: bool = False) -> BifilteredComplex:
    """The subcomplex spanned by the traced path, relabeled x0..x2m.

    Gradings are shifted so that x0 sits in grading 0.
    """
    s = c if simplified else _simplified(c)
    tr = trace(s)
    mapping = {gid: f"x{k}" for k, gid in enumerate(tr.path)}
    keep = set(tr.path)
    base = s.gen(tr.path[0]).gr or 0
    gens = tuple(
        Generator(mapping[g], s.gen(g).i, s.gen(g).j, None if s.gen(g).gr is None else s.gen(g).gr - base)
        for g in tr.path
    )
    arrows = frozenset((mapping[a], mapping[b]) for a, b in s.arrows if a in keep and b in keep)
    out = BifilteredComplex(gens, arrows)
    # translate so that x0 sits on the j-axis
    i0 = gens[0].i
    if i0:
        out = BifilteredComplex(
            tuple(Generator(g.id, g.i - i0, g.j - i0, g.gr) for g in out.generators), out.arrows
        )
    return out


@dataclass(frozen=True)
class SummandDecomposition:
    core: BifilteredComplex
    acyclics: tuple[BifilteredComplex, ...]
    kinds: tuple[str, ...]

    def count(self, kind: str) -> int:
        return sum(1 for k in self.kinds if k == kind)


def classify_acyclic(c: BifilteredComplex) -> str:
    """'box', 'polygon(k)' or 'other' for an acyclic summand."""
    n = len(c)
    hv = [a for a in c.arrows if c.kind(a) in ("horizontal", "vertical")]
    if n == 4 and len(hv) == 4:
        return "box"
    if n % 4 == 0 and n >= 8 and len(hv) == n:
        # a single closed walk alternating horizontal and vertical arrows
        nbr: dict[str, dict[str, str]] = {}
        for s, t in hv:
            k = c.kind((s, t))
            for u, v in ((s, t), (t, s)):
                if k in nbr.setdefault(u, {}):
                    return "other"
                nbr[u][k] = v
        if any(len(d) != 2 for d in nbr.values()) or len(nbr) != n:
            return "other"
        start = c.generators[0].id
        cur, kind, seen = start, "horizontal", 0
        while True:
            cur = nbr[cur][kind]
            kind = "vertical" if kind == "horizontal" else "horizontal"
            seen += 1
            if cur == start:
                break
        if seen == n:
            return f"polygon({n})"
    return "other"


def _renormalize_gradings(c: BifilteredComplex) -> BifilteredComplex:
    if any(g.gr is None for g in c.generators):
        return c
    first = min(c.generators, key=lambda g: g.id)
    return BifilteredComplex(
        tuple(Generator(g.id, g.i, g.j, g.gr - first.gr) for g in c.generators), c.arrows
    )


def decompose(c: BifilteredComplex) -> SummandDecomposition:
    """Split a simultaneously simplified complex into connected summands."""
    from .complex import homology_rank

    parent = {g.id: g.id for g in c.generators}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s, t in c.arrows:
        rs, rt = find(s), find(t)
        if rs != rt:
            parent[max(rs, rt)] = min(rs, rt)
    groups: dict[str, list[Generator]] = {}
    for g in c.generators:
        groups.setdefault(find(g.id), []).append(g)
    x0 = vertically_distinguished(c)
    core_root = find(x0.id)
    core = None
    acyclics = []
    for root in sorted(groups, key=lambda r: min(g.id for g in groups[r])):
        members = groups[root]
        ids = {g.id for g in members}
        sub = BifilteredComplex(tuple(members), frozenset(a for a in c.arrows if a[0] in ids))
        if root == core_root:
            core = sub
            continue
        if homology_rank(sub) != 0:
            raise InvariantViolation(f"summand containing {min(ids)} is not acyclic")
        acyclics.append(_renormalize_gradings(sub))
    assert core is not None
    if homology_rank(core) != 1:
        raise InvariantViolation("core summand does not carry rank-one homology")
    kinds = tuple(classify_acyclic(a) for a in acyclics)
    return SummandDecomposition(core, tuple(acyclics), kinds)


# invariants


def epsilon_of_simplified(c: BifilteredComplex) -> int:
    x0 = vertically_distinguished(c)
    incoming = outgoing = 0
    for s, t in c.arrows:
        if arrow_kind(c.gen(s), c.gen(t)) != "horizontal":
            continue
        if t == x0.id:
            incoming += 1
        elif s == x0.id:
            outgoing += 1
    if incoming + outgoing > 1:
        raise InvariantViolation("distinguished element has several horizontal arrows")
    return 1 if incoming else (-1 if outgoing else 0)


def epsilon(c: BifilteredComplex, check_dual: bool = True) -> int:
    """The invariant epsilon in {-1, 0, 1}.

    Raises :class:`Undecided` when simplification fails. With
    ``check_dual`` the dual complex is simplified independently and the
    two answers must be negatives of each other.
    """
    from .complex import dual

    e = epsilon_of_simplified(_simplified(c))
    if check_dual:
        ed = epsilon_of_simplified(_simplified(dual(c)))
        if ed != -e:
            raise InvariantViolation(f"epsilon(C) = {e} but epsilon(C*) = {ed}")
    return e


def tau(c: BifilteredComplex) -> int:
    """j - i of the vertically distinguished element."""
    x0 = vertically_distinguished(vertically_simplify(c))
    return x0.j - x0.i


@dataclass(frozen=True)
class LocalInvariants:
    a1: int | None
    a2: int | None


def local_invariants(c: BifilteredComplex) -> LocalInvariants:
    steps = reduced_representative(c)
    if not steps or steps[0] < 0:
        return LocalInvariants(None, None)
    a2 = steps[1] if len(steps) > 1 and steps[1] > 0 else None
    return LocalInvariants(steps[0], a2)


def realize_steps(steps: Sequence[int]) -> BifilteredComplex:
    """Reduced complex for a normalized signed sequence."""
    from .complex import mixed_from_steps, staircase_from_steps, unknot

    steps = list(steps)
    if not steps:
        return unknot()
    if all(a > 0 for a in steps):
        return staircase_from_steps(steps)
    return mixed_from_steps(steps)


__all__ = [
    "BasisChange",
    "LocalInvariants",
    "NoRepresentative",
    "SimplificationFailure",
    "SummandDecomposition",
    "Trace",
    "apply_changes",
    "change_basis",
    "decompose",
    "epsilon",
    "horizontally_simplify",
    "local_invariants",
    "reduced_complex",
    "reduced_representative",
    "simultaneous_simplify",
    "tau",
    "trace",
    "vertically_simplify",
]

