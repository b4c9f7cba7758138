"""Finite bifiltered chain complexes over F2 with the U-action suppressed.

A complex is a set of generators, each placed at a lattice point (i, j)
with a relative grading, and a set of arrows ``(source, target)`` meaning
``target`` appears in the boundary of ``source``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import gf2
from .errors import NoRepresentative


@dataclass(frozen=True, order=True)
class Generator:
    id: str
    i: int
    j: int
    gr: int | None = None

    @property
    def fl(self) -> tuple[int, int]:
        return (self.i, self.j)


def arrow_kind(src: Generator, dst: Generator) -> str:
    """'horizontal', 'vertical' or 'diagonal'; anything else is 'illegal'."""
    if dst.i > src.i or dst.j > src.j or dst.fl == src.fl:
        return "illegal"
    if dst.j == src.j:
        return "horizontal"
    if dst.i == src.i:
        return "vertical"
    return "diagonal"


@dataclass(frozen=True)
class BifilteredComplex:
    generators: tuple[Generator, ...]
    arrows: frozenset[tuple[str, str]] = frozenset()
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        index = {}
        for k, g in enumerate(self.generators):
            if g.id in index:
                raise ValueError(f"duplicate generator id {g.id!r}")
            index[g.id] = k
        for s, t in self.arrows:
            if s not in index or t not in index:
                raise ValueError(f"arrow {s}->{t} names an unknown generator")
        object.__setattr__(self, "_index", index)

    def __len__(self) -> int:
        return len(self.generators)

    def gen(self, gid: str) -> Generator:
        return self.generators[self._index[gid]]

    def ids(self) -> list[str]:
        return [g.id for g in self.generators]

    def boundary(self, gid: str) -> set[str]:
        return {t for s, t in self.arrows if s == gid}

    def arrows_of_kind(self, kind: str) -> list[tuple[str, str]]:
        return sorted(a for a in self.arrows if arrow_kind(self.gen(a[0]), self.gen(a[1])) == kind)

    def kind(self, arrow: tuple[str, str]) -> str:
        return arrow_kind(self.gen(arrow[0]), self.gen(arrow[1]))

    # canonical serialization

    def to_dict(self) -> dict:
        gens = sorted(self.generators, key=lambda g: g.id)
        return {
            "generators": [{"id": g.id, "i": g.i, "j": g.j, "gr": g.gr} for g in gens],
            "arrows": [list(a) for a in sorted(self.arrows)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_dict(cls, doc: dict) -> BifilteredComplex:
        gens = tuple(Generator(g["id"], g["i"], g["j"], g.get("gr")) for g in doc["generators"])
        return cls(gens, frozenset((s, t) for s, t in doc["arrows"]))

    @classmethod
    def from_json(cls, text: str) -> BifilteredComplex:
        return cls.from_dict(json.loads(text))

    def canonical(self) -> BifilteredComplex:
        """Same complex with generators sorted by id (the serialized order)."""
        return BifilteredComplex(tuple(sorted(self.generators, key=lambda g: g.id)), self.arrows)


def unknot() -> BifilteredComplex:
    return BifilteredComplex((Generator("x0", 0, 0, 0),))


def full_sequence(steps: Sequence[int]) -> list[int]:
    """The symmetrized sequence a_1..a_{2m} with a_i = a_{2m+1-i}."""
    return list(steps) + list(steps)[::-1]


def staircase_levels(steps: Sequence[int]) -> list[tuple[int, int]]:
    """Filtration levels of x_0..x_2m for a (possibly signed) step sequence."""
    full = full_sequence(steps)
    i, j = 0, sum(steps)
    out = [(i, j)]
    for k, a in enumerate(full, start=1):
        if k % 2:
            i += a
        else:
            j -= a
        out.append((i, j))
    return out


def staircase_from_steps(steps: Sequence[int]) -> BifilteredComplex:
    """Staircase complex for a sequence of positive step lengths."""
    steps = list(steps)
    if any(a <= 0 for a in steps):
        raise ValueError(f"staircase needs positive steps, got {steps}; use mixed_from_steps")
    levels = staircase_levels(steps)
    gens = tuple(Generator(f"x{k}", i, j, k % 2) for k, (i, j) in enumerate(levels))
    arrows = set()
    for k in range(1, len(levels), 2):
        arrows.add((f"x{k}", f"x{k-1}"))
        arrows.add((f"x{k}", f"x{k+1}"))
    return BifilteredComplex(gens, frozenset(arrows))


def _path_arrows(steps: Sequence[int]) -> list[tuple[int, int]]:
    """Horizontal and vertical arrows of the reduced representative, by index."""
    full = full_sequence(steps)
    out = []
    for k, a in enumerate(full, start=1):
        if k % 2:
            # horizontal between x_k and x_{k-1}; positive means x_k -> x_{k-1}
            out.append((k, k - 1) if a > 0 else (k - 1, k))
        else:
            # vertical; positive means x_{k-1} -> x_k
            out.append((k - 1, k) if a > 0 else (k, k - 1))
    return out


def path_from_steps(steps: Sequence[int]) -> BifilteredComplex:
    """The alternating path of a signed sequence with no diagonal arrows.

    Modulo diagonal arrows this is a complex for every sequence; it is the
    model used for class arithmetic, where only horizontal and vertical
    arrows matter.
    """
    steps = list(steps)
    if any(a == 0 for a in steps):
        raise ValueError(f"normalize the sequence first (zero entry in {steps})")
    levels = staircase_levels(steps)
    path = _path_arrows(steps)
    gr = [0] * len(levels)
    for k, (s, t) in enumerate(path, start=1):
        gr[k] = gr[k - 1] - 1 if s == k - 1 else gr[k - 1] + 1
    gens = tuple(Generator(f"x{k}", i, j, gr[k]) for k, (i, j) in enumerate(levels))
    return BifilteredComplex(gens, frozenset((f"x{s}", f"x{t}") for s, t in path))


def hv_part(c: BifilteredComplex) -> BifilteredComplex:
    """Drop the diagonal arrows, keeping the horizontal and vertical ones."""
    keep = frozenset(a for a in c.arrows if c.kind(a) != "diagonal")
    return BifilteredComplex(c.generators, keep)


# Safety cap on the number of partial diagonal assignments explored.
DIAGONAL_SEARCH_LIMIT = 200_000


def mixed_from_steps(steps: Sequence[int]) -> BifilteredComplex:
    """Reduced representative of a signed step sequence.

    Horizontal and vertical arrows follow the sign conventions; diagonal
    arrows are then chosen so that the square of the differential
    vanishes. The diagonals are solved one grading level at a time (each
    level is linear once the levels below are fixed), taking the
    lexicographically first solution that can be completed.
    """
    steps = list(steps)
    if any(a == 0 for a in steps):
        raise ValueError(f"normalize the sequence first (zero entry in {steps})")
    if all(a > 0 for a in steps):
        return staircase_from_steps(steps)
    levels = staircase_levels(steps)
    n = len(levels)
    path = _path_arrows(steps)
    gr = [0] * n
    for k, (s, t) in enumerate(path, start=1):
        # the arrow drops grading by one in the direction it points
        gr[k] = gr[k - 1] - 1 if s == k - 1 else gr[k - 1] + 1
    fixed = set(path)

    cands_by_level: dict[int, list[tuple[int, int]]] = {}
    for s in range(n):
        for t in range(n):
            if (
                gr[t] == gr[s] - 1
                and levels[t][0] < levels[s][0]
                and levels[t][1] < levels[s][1]
            ):
                cands_by_level.setdefault(gr[s], []).append((s, t))
    grades = sorted(set(gr))
    by_grade: dict[int, list[int]] = {}
    for k in range(n):
        by_grade.setdefault(gr[k], []).append(k)

    budget = [DIAGONAL_SEARCH_LIMIT]

    def level_space(g: int, chosen: set[tuple[int, int]]):
        cands = cands_by_level.get(g, [])
        arrows = fixed | chosen
        below: dict[int, set[int]] = {}
        for s, t in arrows:
            if gr[s] == g - 1:
                below.setdefault(s, set()).add(t)
        eqs = []
        for x in by_grade.get(g, []):
            for z in by_grade.get(g - 2, []):
                mask = 0
                for v, (s, t) in enumerate(cands):
                    if s == x and z in below.get(t, ()):
                        mask |= 1 << v
                rhs = 0
                for s, t in fixed:
                    if s == x and z in below.get(t, ()):
                        rhs ^= 1
                if mask or rhs:
                    eqs.append((mask, rhs))
        return cands, gf2.solve(eqs, len(cands))

    def search(level: int, chosen: set[tuple[int, int]]):
        if level == len(grades):
            return chosen
        g = grades[level]
        cands, space = level_space(g, chosen)
        if space is None:
            return None
        for sol in space.lex_iter():
            budget[0] -= 1
            if budget[0] < 0:
                raise NoRepresentative(f"no representative found for {steps}: search limit reached")
            picked = {cands[v] for v in range(len(cands)) if sol >> v & 1}
            got = search(level + 1, chosen | picked)
            if got is not None:
                return got
        return None

    diagonals = search(0, set())
    if diagonals is None:
        raise NoRepresentative(f"no representative: no diagonal arrows make d^2 = 0 for {steps}")
    gens = tuple(Generator(f"x{k}", i, j, gr[k]) for k, (i, j) in enumerate(levels))
    arrows = frozenset((f"x{s}", f"x{t}") for s, t in fixed | diagonals)
    return BifilteredComplex(gens, arrows)


def dual(c: BifilteredComplex) -> BifilteredComplex:
    gens = tuple(Generator(g.id, -g.i, -g.j, None if g.gr is None else -g.gr) for g in c.generators)
    return BifilteredComplex(gens, frozenset((t, s) for s, t in c.arrows))


def transpose(c: BifilteredComplex) -> BifilteredComplex:
    """Swap the two filtrations."""
    gens = tuple(Generator(g.id, g.j, g.i, g.gr) for g in c.generators)
    return BifilteredComplex(gens, c.arrows)


def _wrap(gid: str) -> str:
    return f"({gid})" if "*" in gid else gid


def product_id(a: str, b: str) -> str:
    return f"{_wrap(a)}*{_wrap(b)}"


def tensor(c1: BifilteredComplex, c2: BifilteredComplex) -> BifilteredComplex:
    gens = []
    for g in c1.generators:
        for h in c2.generators:
            gr = None if g.gr is None or h.gr is None else g.gr + h.gr
            gens.append(Generator(product_id(g.id, h.id), g.i + h.i, g.j + h.j, gr))
    arrows = set()
    for s, t in c1.arrows:
        for h in c2.generators:
            arrows.add((product_id(s, h.id), product_id(t, h.id)))
    for s, t in c2.arrows:
        for g in c1.generators:
            arrows.add((product_id(g.id, s), product_id(g.id, t)))
    return BifilteredComplex(tuple(gens), frozenset(arrows))


def relabel(c: BifilteredComplex, mapping: dict[str, str]) -> BifilteredComplex:
    gens = tuple(Generator(mapping[g.id], g.i, g.j, g.gr) for g in c.generators)
    return BifilteredComplex(gens, frozenset((mapping[s], mapping[t]) for s, t in c.arrows))


# structural checks


def _boundary_rows(c: BifilteredComplex, keep=None) -> list[int]:
    index = {g.id: k for k, g in enumerate(c.generators)}
    rows = [0] * len(c.generators)
    for s, t in c.arrows:
        if keep is None or keep(c.gen(s), c.gen(t)):
            rows[index[s]] |= 1 << index[t]
    return rows


def homology_rank(c: BifilteredComplex, keep=None) -> int:
    """F2 homology rank of the whole complex (or of the arrows passing ``keep``)."""
    return len(c) - 2 * gf2.rank(_boundary_rows(c, keep))


def vertical_rank(c: BifilteredComplex) -> int:
    return homology_rank(c, lambda s, t: s.i == t.i)


def horizontal_rank(c: BifilteredComplex) -> int:
    return homology_rank(c, lambda s, t: s.j == t.j)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[str, ...]
    total_rank: int
    vertical_rank: int
    horizontal_rank: int


def d_squared_violations(c: BifilteredComplex, mod_diagonal: bool = False) -> list[str]:
    """Generators whose boundary has nonzero boundary.

    With ``mod_diagonal`` terms that are diagonal from the generator are
    ignored, which is the right test for a complex without diagonals.
    """
    out: dict[str, set[str]] = {}
    for s, t in c.arrows:
        out.setdefault(s, set()).add(t)
    bad = []
    for g in c.generators:
        acc: set[str] = set()
        for t in out.get(g.id, ()):
            acc ^= out.get(t, set())
        if mod_diagonal:
            acc = {t for t in acc if arrow_kind(g, c.gen(t)) != "diagonal"}
        if acc:
            bad.append(f"d^2({g.id}) = {' + '.join(sorted(acc))} != 0")
    return bad


def validate(c: BifilteredComplex, ranks: bool = True) -> ValidationReport:
    """Check the complex invariants; ranks can be skipped for large inputs."""
    v: list[str] = []
    for s, t in sorted(c.arrows):
        a, b = c.gen(s), c.gen(t)
        if arrow_kind(a, b) == "illegal":
            v.append(f"arrow {s}->{t} does not strictly lower the filtration: {a.fl} -> {b.fl}")
        if a.gr is not None and b.gr is not None and b.gr != a.gr - 1:
            v.append(f"arrow {s}->{t} changes grading by {b.gr - a.gr}, expected -1")
    v.extend(d_squared_violations(c))
    if ranks:
        tr, vr, hr = homology_rank(c), vertical_rank(c), horizontal_rank(c)
    else:
        tr = vr = hr = -1
    return ValidationReport(not v, tuple(v), tr, vr, hr)


def steps_of_staircase(c: BifilteredComplex) -> list[int]:
    """Read back step lengths from a staircase built by :func:`staircase_from_steps`."""
    n = len(c)
    full = []
    for k in range(1, n):
        a, b = c.gen(f"x{k-1}"), c.gen(f"x{k}")
        full.append(b.i - a.i if k % 2 else a.j - b.j)
    return full[: len(full) // 2]


def filtration_multiset(c: BifilteredComplex) -> list[tuple[int, int]]:
    return sorted(g.fl for g in c.generators)


def is_symmetric(c: BifilteredComplex) -> bool:
    """Whether the multiset of filtration levels is symmetric under (i, j) -> (j, i)."""
    levels = filtration_multiset(c)
    return levels == sorted((j, i) for i, j in levels)


def from_pairs(gens: Iterable[tuple[str, int, int, int | None]], arrows: Iterable[tuple[str, str]]) -> BifilteredComplex:
    return BifilteredComplex(tuple(Generator(*g) for g in gens), frozenset(arrows))
