"""The group of epsilon-classes: step sequences, sums, and orderings.

A class is written ``[a1, ..., am]``: the reduced staircase (or mixed
path) whose first half of steps is ``a1..am``. Formal sums of classes are
``ClassExpr`` values; anything not covered by the box or polygon lemma
is evaluated by tensoring complexes and simplifying.
"""

from __future__ import annotations

import ast
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .complex import (
    BifilteredComplex,
    d_squared_violations,
    dual,
    path_from_steps,
    relabel,
    tensor,
    unknot,
)
from .errors import InvariantViolation, Undecided
from .simplify import (
    SimplificationFailure,
    epsilon_of_simplified,
    reduced_complex,
    simultaneous_simplify,
    trace,
)

StepSequence = tuple[int, ...]

# sequence algebra


def _merge_zeros(full: list[int]) -> list[int]:
    out = list(full)
    while 0 in out:
        k = out.index(0)
        if k == 0:
            del out[0:2]
        elif k == len(out) - 1:
            del out[k - 1 :]
        else:
            out[k - 1 : k + 2] = [out[k - 1] + out[k + 1]]
    return out


def seq_normalize(s: Iterable[int]) -> StepSequence:
    """Remove zero steps from a half sequence.

    Zeros are merged on the symmetric completion ``s + reversed(s)``; an
    interior zero joins its neighbours, a zero at either end cancels the
    arrow next to it. The first half of the result is returned.
    """
    half = list(s)
    full = _merge_zeros(half + half[::-1])
    if full != full[::-1] or len(full) % 2:
        raise InvariantViolation(f"zero merging broke symmetry: {half} -> {full}")
    return tuple(full[: len(full) // 2])


# repetition notation


@dataclass(frozen=True)
class _Lit:
    expr: str
    pos: int


@dataclass(frozen=True)
class _Block:
    items: tuple
    var: str | None
    lo: str
    hi: str
    pos: int


_ALLOWED = (ast.Expression, ast.BinOp, ast.UnaryOp, ast.Add, ast.Sub, ast.Mult, ast.FloorDiv, ast.USub, ast.UAdd)


def _eval_int(expr: str, env: dict[str, int], pos: int) -> int:
    try:
        tree = ast.parse(expr.strip(), mode="eval")
    except SyntaxError:
        raise ValueError(f"malformed expression {expr.strip()!r} at offset {pos}") from None

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Name):
            if node.id not in env:
                raise ValueError(f"unbound name {node.id!r} at offset {pos}")
            return env[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and isinstance(node.op, _ALLOWED):
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            return a // b
        raise ValueError(f"unsupported expression {expr.strip()!r} at offset {pos}")

    return ev(tree)


class _PatternParser:
    """Items separated by commas; a block is ``( items )_lo^hi``.

    ``_1^k`` repeats k times; ``_{v=lo}^{hi}`` iterates ``v`` over
    lo..hi inclusive. A parenthesised group not followed by ``_`` or
    ``^`` is ordinary arithmetic.
    """

    def __init__(self, text: str):
        self.s = text
        self.k = 0

    def fail(self, msg: str):
        raise ValueError(f"{msg} at offset {self.k}")

    def skip(self):
        while self.k < len(self.s) and self.s[self.k].isspace():
            self.k += 1

    def items(self, closing: str | None) -> tuple:
        out = []
        self.skip()
        if closing and self.k < len(self.s) and self.s[self.k] == closing:
            return ()
        if closing is None and self.k >= len(self.s):
            return ()
        while True:
            out.append(self.item())
            self.skip()
            if self.k < len(self.s) and self.s[self.k] == ",":
                self.k += 1
                continue
            break
        return tuple(out)

    def _matching(self, start: int) -> int:
        depth = 0
        for k in range(start, len(self.s)):
            if self.s[k] == "(":
                depth += 1
            elif self.s[k] == ")":
                depth -= 1
                if depth == 0:
                    return k
        self.k = len(self.s)
        self.fail("unbalanced parenthesis")

    def item(self):
        self.skip()
        start = self.k
        if self.k < len(self.s) and self.s[self.k] == "(":
            end = self._matching(self.k)
            after = end + 1
            while after < len(self.s) and self.s[after].isspace():
                after += 1
            if after < len(self.s) and self.s[after] in "_^":
                self.k += 1
                inner = self.items(")")
                self.skip()
                if self.k >= len(self.s) or self.s[self.k] != ")":
                    self.fail("expected ')'")
                self.k = after
                var, lo = None, "1"
                if self.s[self.k] == "_":
                    self.k += 1
                    sub = self.braced()
                    if "=" in sub:
                        var, lo = (x.strip() for x in sub.split("=", 1))
                        if not var.isidentifier():
                            self.fail(f"bad index variable {var!r}")
                    elif sub.strip() != "1":
                        self.fail("subscript must be 1 or v=lo")
                self.skip()
                if self.k >= len(self.s) or self.s[self.k] != "^":
                    self.fail("expected '^'")
                self.k += 1
                hi = self.braced()
                return _Block(inner, var, lo, hi, start)
        # plain arithmetic up to the next top-level comma or closing paren
        depth = 0
        while self.k < len(self.s):
            ch = self.s[self.k]
            if ch == "(":
                depth += 1
            elif ch == ")":
                if depth == 0:
                    break
                depth -= 1
            elif ch == "," and depth == 0:
                break
            self.k += 1
        text = self.s[start : self.k]
        if not text.strip():
            self.fail("empty entry")
        return _Lit(text, start)

    def braced(self) -> str:
        self.skip()
        if self.k < len(self.s) and self.s[self.k] == "{":
            end = self.s.find("}", self.k)
            if end < 0:
                self.fail("unclosed '{'")
            text = self.s[self.k + 1 : end]
            self.k = end + 1
            return text
        m = re.compile(r"-?\w+").match(self.s, self.k)
        if not m:
            self.fail("expected an exponent")
        self.k = m.end()
        return m.group(0)


def _expand(items: tuple, env: dict[str, int]) -> list[int]:
    out: list[int] = []
    for it in items:
        if isinstance(it, _Lit):
            out.append(_eval_int(it.expr, env, it.pos))
            continue
        lo = _eval_int(it.lo, env, it.pos)
        hi = _eval_int(it.hi, env, it.pos)
        if it.var is None:
            if hi < 0:
                raise ValueError(f"negative repetition count {hi} at offset {it.pos}")
            for _ in range(hi):
                out.extend(_expand(it.items, env))
        else:
            for v in range(lo, hi + 1):
                out.extend(_expand(it.items, {**env, it.var: v}))
    return out


def expand_notation(pattern: str, **env: int) -> StepSequence:
    """Unroll the repetition notation, e.g. ``"(1,a)_1^p, 1, a+c"``.

    Names are bound through keyword arguments. Zeros are kept; pass the
    result through :func:`seq_normalize` to merge them.

    >>> expand_notation("(1,1)^2, 1, 3")
    (1, 1, 1, 1, 1, 3)
    """
    p = _PatternParser(pattern)
    items = p.items(None)
    p.skip()
    if p.k != len(pattern):
        p.fail(f"unexpected {pattern[p.k]!r}")
    return tuple(_expand(items, dict(env)))


# formal sums


@dataclass(frozen=True)
class ClassExpr:
    """The formal sum ``sum multiplicity * [seq]``; no terms means 0."""

    terms: tuple[tuple[int, StepSequence], ...] = ()

    @classmethod
    def of(cls, seq: Sequence[int], mult: int = 1) -> ClassExpr:
        return cls(((mult, tuple(seq)),)).normalized()

    @classmethod
    def coerce(cls, x) -> ClassExpr:
        if isinstance(x, ClassExpr):
            return x
        return cls.of(x)

    def normalized(self) -> ClassExpr:
        """Merge equal sequences, drop zero classes and zero multiplicities.

        Order of first appearance is kept so that realization order is
        predictable.
        """
        acc: dict[StepSequence, int] = {}
        for m, s in self.terms:
            s = seq_normalize(s)
            if s and m:
                acc[s] = acc.get(s, 0) + m
        return ClassExpr(tuple((m, s) for s, m in acc.items() if m))

    def __add__(self, other: ClassExpr) -> ClassExpr:
        return ClassExpr(self.terms + ClassExpr.coerce(other).terms).normalized()

    def __neg__(self) -> ClassExpr:
        return ClassExpr(tuple((-m, s) for m, s in self.terms))

    def __sub__(self, other: ClassExpr) -> ClassExpr:
        return self + (-ClassExpr.coerce(other))

    def scale(self, n: int) -> ClassExpr:
        return ClassExpr(tuple((n * m, s) for m, s in self.terms)).normalized()

    def is_zero(self) -> bool:
        return not self.normalized().terms

    def single(self) -> StepSequence | None:
        """The sequence when the expression is exactly one ``+1`` term."""
        t = self.normalized().terms
        if len(t) == 1 and t[0][0] == 1:
            return t[0][1]
        if not t:
            return ()
        return None

    def tau(self) -> int:
        return sum(m * sum(s) for m, s in self.terms)

    def to_list(self) -> list[list]:
        return [[m, list(s)] for m, s in self.terms]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, (m, s) in enumerate(self.terms):
            body = "[" + ", ".join(map(str, s)) + "]"
            coef = "" if abs(m) == 1 else f"{abs(m)}"
            sign = "-" if m < 0 else "+"
            parts.append((sign if k or m < 0 else "") + (" " if k else "") + coef + body)
        return " ".join(parts)


# lemma matchers; all purely syntactic on normalized positive sequences


def _positive(s: Sequence[int]) -> bool:
    return len(s) > 0 and all(a > 0 for a in s)


def box_hypothesis(a: Sequence[int], b: Sequence[int]) -> bool:
    """``m`` even and every ``b_j`` lies between the odd and even entries of ``a``."""
    if not (_positive(a) and _positive(b)) or len(a) % 2:
        return False
    return max(a[0::2]) <= min(b) and max(b) <= min(a[1::2])


def _ones_pairs(s: Sequence[int]) -> list[int] | None:
    """Even-position entries of ``(1, e1, 1, e2, ...)``, or None."""
    if not _positive(s) or len(s) % 2 or any(x != 1 for x in s[0::2]):
        return None
    return list(s[1::2])


def _polygon_tail(b: Sequence[int]) -> tuple[int | None, int, int] | None:
    """Parse ``b = [(1, a)^q, 1, a + d]`` as ``(a, q, last)``; ``a`` is None when q = 0."""
    e = _ones_pairs(b)
    if e is None:
        return None
    q = len(e) - 1
    if q == 0:
        return None, 0, e[0]
    a = e[0]
    if any(x != a for x in e[:-1]) or e[-1] < a:
        return None
    return a, q, e[-1]


def polygon_hypothesis(a: Sequence[int], b: Sequence[int]) -> dict | None:
    """Match ``a + b`` against the polygon lemma; returns its parameters.

    ``b`` must read ``(1, x)^q, 1, x + d`` and ``a`` must split into
    blocks ``(1, x)^{p_l}, 1, x + c_l`` with ``p_l <= q`` and ``c_l >= d``.
    When d = 0 every pair of ``a`` may be its own block; otherwise runs of
    entries equal to x are absorbed into the following block.
    """
    ea = _ones_pairs(a)
    tail = _polygon_tail(b)
    if ea is None or tail is None:
        return None
    x, q, last = tail
    if q == 0:
        # every block of a has p_l = 0, so c_l >= d reads a_even >= x + d
        if min(ea) < last:
            return None
        x = 1
        return {"a": x, "q": 0, "d": last - x, "blocks": [(0, e - x) for e in ea]}
    d = last - x
    if min(ea) < x:
        return None
    if d == 0:
        return {"a": x, "q": q, "d": 0, "blocks": [(0, e - x) for e in ea]}
    blocks, p = [], 0
    for e in ea:
        if e == x:
            p += 1
            continue
        if e - x < d or p > q:
            return None
        blocks.append((p, e - x))
        p = 0
    if p:
        return None
    return {"a": x, "q": q, "d": d, "blocks": blocks}


def order_i_hypothesis(a: Sequence[int], b: Sequence[int]) -> bool:
    """True when the order-i lemma gives ``[a] >> [b]``."""
    if not (_positive(a) and _positive(b)):
        return False
    if b[0] > a[0]:
        return True
    return b[0] == a[0] and len(a) > 1 and len(b) > 1 and b[1] < a[1]


def _order_j_shape(s: Sequence[int]) -> tuple[int | None, int, int] | None:
    return _polygon_tail(s)


def order_j_hypothesis(a: Sequence[int], b: Sequence[int]) -> dict | None:
    """Parameters when the order-j lemma gives ``[a] >> [b]``, else None.

    ``a = [(1,x)^p, 1, x+c]`` with c > 0 and ``b = [(1,x)^q, 1, x+d]``
    with d >= 0, and q > p or (q = p and d < c).
    """
    sa, sb = _order_j_shape(a), _order_j_shape(b)
    if sa is None or sb is None:
        return None
    xa, p, la = sa
    xb, q, lb = sb
    if xa is not None and xb is not None and xa != xb:
        return None
    x = xa if xa is not None else (xb if xb is not None else 1)
    c, d = la - x, lb - x
    if x <= 0 or c <= 0 or d < 0:
        return None
    if q > p or (q == p and d < c):
        return {"a": x, "p": p, "q": q, "c": c, "d": d}
    return None


# realization: tensor and reduce
#
# Class arithmetic works modulo diagonal arrows. Epsilon and the traced
# sequence only read horizontal and vertical arrows, tensor products and
# duals never turn a diagonal arrow into another kind, and the basis
# changes used by the simplifier stay within one row or column. Modulo
# diagonals a simplified basis is the direct sum of its horizontal and
# vertical components, and the components off the traced path are
# acyclic in both directions, so dropping them is exact.


def _compact(c: BifilteredComplex) -> BifilteredComplex:
    """Relabel to short ids ``g0, g1, ...`` in generator order."""
    return relabel(c, {g.id: f"g{k}" for k, g in enumerate(c.generators)})


def _simplified_hv(c: BifilteredComplex) -> BifilteredComplex:
    s = simultaneous_simplify(c, check_ranks=False, hv_only=True)
    if isinstance(s, SimplificationFailure):
        raise Undecided(s.reason)
    return s


def reduce_complex(c: BifilteredComplex) -> BifilteredComplex:
    """The traced path of a simplified basis, modulo diagonal arrows."""
    out = _compact(reduced_complex(_simplified_hv(c), simplified=True))
    bad = d_squared_violations(out, mod_diagonal=True)
    if bad:
        raise InvariantViolation(f"reduced path is not a complex: {bad[:3]}")
    return out


def sequence_of(c: BifilteredComplex) -> StepSequence:
    """Reduced step sequence of a complex (simplifying it first)."""
    return tuple(trace(_simplified_hv(c)).steps)


@lru_cache(maxsize=512)
def _seq_complex(seq: StepSequence) -> BifilteredComplex:
    return path_from_steps(seq)


def combine(parts: Iterable[BifilteredComplex]) -> BifilteredComplex:
    """Tensor complexes one at a time, reducing after each product."""
    acc: BifilteredComplex | None = None
    for c in parts:
        acc = c if acc is None else reduce_complex(tensor(acc, c))
    return acc if acc is not None else unknot()


def _fast_sum(a: StepSequence, b: StepSequence) -> StepSequence | None:
    if box_hypothesis(a, b) or polygon_hypothesis(a, b):
        return a + b
    if box_hypothesis(b, a) or polygon_hypothesis(b, a):
        return b + a
    return None


@lru_cache(maxsize=512)
def _multiple(seq: StepSequence, n: int) -> tuple[StepSequence, BifilteredComplex]:
    if n < 1:
        raise ValueError("multiple needs n >= 1")
    base = _seq_complex(seq)
    acc, acc_c = seq, base
    for _ in range(n - 1):
        nxt = _fast_sum(acc, seq) if _positive(seq) and _positive(acc) else None
        if nxt is not None:
            acc = seq_normalize(nxt)
            acc_c = _seq_complex(acc)
        else:
            acc_c = reduce_complex(tensor(acc_c, base))
            acc = seq_normalize(trace(acc_c).steps)
    return acc, acc_c


def multiple_sequence(seq: Sequence[int], n: int) -> StepSequence:
    """Reduced sequence of ``n * [seq]`` for ``n >= 1``.

    Uses the box and polygon lemmas while they apply (this is the
    collapse of ``r * [D]`` to a single staircase), otherwise the general
    tensor path.
    """
    return _multiple(tuple(seq), n)[0]


def _term_complex(mult: int, seq: StepSequence) -> BifilteredComplex:
    c = _multiple(seq, abs(mult))[1]
    return dual(c) if mult < 0 else c


@lru_cache(maxsize=256)
def _realize_cached(expr: ClassExpr) -> BifilteredComplex:
    # positive terms first keeps intermediate products small in practice
    terms = sorted(expr.terms, key=lambda t: (t[0] < 0, len(t[1])))
    return combine(_term_complex(m, s) for m, s in terms)


def realize(expr) -> BifilteredComplex:
    """A simplified complex in the class of ``expr``."""
    expr = ClassExpr.coerce(expr).normalized()
    if len(expr.terms) == 1:
        m, s = expr.terms[0]
        return _term_complex(m, s)
    return _realize_cached(expr)


def class_sequence(expr) -> StepSequence:
    """The reduced representative of ``expr``."""
    expr = ClassExpr.coerce(expr).normalized()
    if not expr.terms:
        return ()
    if len(expr.terms) == 1 and expr.terms[0][0] > 0:
        return multiple_sequence(*expr.terms[0][::-1])
    return seq_normalize(sequence_of(realize(expr)))


def class_epsilon(expr) -> int:
    return epsilon_of_simplified(_simplified_hv(realize(expr)))


def difference_epsilons(a, b, n_max: int) -> list[int]:
    """``[eps(A - n B) for n = 1..n_max]`` computed incrementally."""
    ca, cb = realize(a), dual(realize(b))
    out = []
    acc = ca
    for n in range(1, n_max + 1):
        s = _simplified_hv(tensor(acc, cb))
        out.append(epsilon_of_simplified(s))
        if n < n_max:
            acc = reduce_complex(s)
    return out


# class addition


@dataclass(frozen=True)
class AddResult:
    """Outcome of :func:`class_add`.

    ``path`` is 'box', 'polygon', 'general' or 'undecided'. ``verified``
    is True when a fast path was re-derived by the general path.
    """

    seq: StepSequence | None
    path: str
    verified: bool = False
    params: dict = field(default_factory=dict)

    @property
    def undecided(self) -> bool:
        return self.seq is None


def class_add(a, b, verify: bool = False) -> AddResult:
    """Reduced representative of ``a + b``.

    When both sides are single positive sequences matching the box or
    polygon lemma the concatenation is returned directly; ``verify``
    also runs the general path and raises on disagreement.
    """
    ea, eb = ClassExpr.coerce(a), ClassExpr.coerce(b)
    sa, sb = ea.single(), eb.single()
    fast: AddResult | None = None
    if sa is not None and sb is not None and sa and sb:
        for x, y in ((sa, sb), (sb, sa)):
            if box_hypothesis(x, y):
                fast = AddResult(x + y, "box")
                break
            params = polygon_hypothesis(x, y)
            if params:
                fast = AddResult(x + y, "polygon", params=params)
                break
    if fast is not None and not verify:
        return fast
    try:
        general = class_sequence(ea + eb)
    except Undecided:
        if fast is not None:
            return fast
        return AddResult(None, "undecided")
    if fast is None:
        return AddResult(general, "general")
    if general != fast.seq:
        raise InvariantViolation(f"{fast.path} lemma gives {list(fast.seq)} but tensor path gives {list(general)}")
    return AddResult(fast.seq, fast.path, True, fast.params)


def class_compare(a, b) -> str:
    """'<', '=', '>' by the sign of epsilon of ``a - b``; 'undecided' on failure."""
    diff = ClassExpr.coerce(a) - ClassExpr.coerce(b)
    if diff.is_zero():
        return "="
    try:
        e = class_epsilon(diff)
    except Undecided:
        return "undecided"
    return {1: ">", 0: "=", -1: "<"}[e]


# Archimedean comparison

RELATIONS = ("much-less", "much-greater", "equivalent", "equal", "undecided")


@dataclass(frozen=True)
class ArchVerdict:
    relation: str
    certificate: str | None
    n_max: int
    witnesses: tuple = ()

    @property
    def sampled(self) -> bool:
        return bool(self.certificate and self.certificate.startswith("epsilon-sample"))

    def to_dict(self) -> dict:
        return {
            "certificate": self.certificate,
            "n_max": self.n_max,
            "relation": self.relation,
            "witnesses": [dict(w) for w in self.witnesses],
        }


def _flip(rel: str) -> str:
    return {"much-less": "much-greater", "much-greater": "much-less"}.get(rel, rel)


def lemma_certificate(a: Sequence[int], b: Sequence[int]) -> tuple[str, dict] | None:
    """A lemma proving ``[a] >> [b]``, with its parameters."""
    if order_i_hypothesis(a, b):
        return "lemma-order-i", {"a1": a[0], "b1": b[0]}
    params = order_j_hypothesis(a, b)
    if params:
        return "lemma-order-j", params
    return None


def _abs_expr(e: ClassExpr) -> tuple[ClassExpr, int]:
    if e.is_zero():
        return e, 0
    s = class_epsilon(e)
    return (e if s >= 0 else -e), s


def arch_compare(a, b, n_max: int = 3, check: bool = False) -> ArchVerdict:
    """Compare ``|a|`` and ``|b|`` up to Archimedean equivalence.

    A lemma certificate is exact. Otherwise ``eps(|A| - n|B|)`` and
    ``eps(|B| - n|A|)`` are sampled for ``n <= n_max``; that verdict is
    bounded evidence only. With ``check`` the samples are also taken
    when a lemma applies, and a disagreement raises.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    ea, eb = ClassExpr.coerce(a).normalized(), ClassExpr.coerce(b).normalized()
    if ea == eb:
        return ArchVerdict("equal", "exact-cancellation", n_max)
    sa, sb = ea.single(), eb.single()
    lemma = None
    if sa and sb:
        got = lemma_certificate(sa, sb)
        if got:
            lemma = ("much-greater", *got)
        else:
            got = lemma_certificate(sb, sa)
            if got:
                lemma = ("much-less", *got)
    if lemma and not check:
        return ArchVerdict(lemma[0], lemma[1], n_max, ({"lemma": lemma[1], **lemma[2]},))
    try:
        pa, ka = _abs_expr(ea)
        pb, kb = _abs_expr(eb)
        if ka == 0 and kb == 0:
            return ArchVerdict("equal", "exact-cancellation", n_max)
        if ka == 0 or kb == 0:
            return ArchVerdict("much-less" if ka == 0 else "much-greater", "exact-cancellation", n_max)
        fwd = difference_epsilons(pa, pb, n_max)
        if fwd[0] == 0:
            return ArchVerdict("equal", "exact-cancellation", n_max, ({"direction": "A-nB", "epsilon": 0, "n": 1},))
        bwd = difference_epsilons(pb, pa, n_max)
    except Undecided as exc:
        if lemma:
            return ArchVerdict(lemma[0], lemma[1], n_max, ({"lemma": lemma[1], **lemma[2]},))
        return ArchVerdict("undecided", None, n_max, ({"reason": str(exc)},))
    witnesses = tuple(
        [{"direction": "A-nB", "epsilon": e, "n": n} for n, e in enumerate(fwd, 1)]
        + [{"direction": "B-nA", "epsilon": e, "n": n} for n, e in enumerate(bwd, 1)]
    )
    if all(e == 1 for e in fwd):
        sampled = "much-greater"
    elif all(e == 1 for e in bwd):
        sampled = "much-less"
    elif any(e < 1 for e in fwd) and any(e < 1 for e in bwd):
        sampled = "equivalent"
    else:
        sampled = "undecided"
    if lemma:
        if sampled != lemma[0]:
            raise InvariantViolation(f"{lemma[1]} says {lemma[0]} but samples say {sampled}")
        return ArchVerdict(lemma[0], lemma[1], n_max, ({"lemma": lemma[1], **lemma[2]},) + witnesses)
    return ArchVerdict(sampled, f"epsilon-sample({n_max})" if sampled != "undecided" else None, n_max, witnesses)


__all__ = [
    "AddResult",
    "ArchVerdict",
    "ClassExpr",
    "arch_compare",
    "box_hypothesis",
    "class_add",
    "class_compare",
    "class_epsilon",
    "class_sequence",
    "combine",
    "difference_epsilons",
    "expand_notation",
    "lemma_certificate",
    "multiple_sequence",
    "order_i_hypothesis",
    "order_j_hypothesis",
    "polygon_hypothesis",
    "realize",
    "reduce_complex",
    "seq_normalize",
]
