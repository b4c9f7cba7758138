"""Torus knots, their cables, and the K(i, j) family, as classes.

Every staircase emitted here is derived twice: once from a step-sequence
formula and once from the Alexander polynomial, and the two must agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import InvariantViolation, NotLSpaceForm
from .falg import ClassExpr, StepSequence, expand_notation, seq_normalize
from .laurent import (
    LaurentPoly,
    cable_alexander,
    cable_closed_form,
    lspace_gaps,
    torus_alexander,
)

NOT_CERTIFIED = "not a certified L-space knot; no staircase model"

# expression tree


@dataclass(frozen=True)
class Torus:
    p: int
    q: int


@dataclass(frozen=True)
class Cable:
    child: "KnotExpr"
    m: int
    l: int


@dataclass(frozen=True)
class Mirror:
    child: "KnotExpr"


@dataclass(frozen=True)
class Sum:
    children: tuple


@dataclass(frozen=True)
class Repeat:
    n: int
    child: "KnotExpr"


@dataclass(frozen=True)
class RawClass:
    seq: tuple[int, ...]


KnotExpr = Torus | Cable | Mirror | Sum | Repeat | RawClass


class KnotError(ValueError):
    """A leaf that fails validation; ``leaf`` is the offending node."""

    def __init__(self, message: str, leaf=None):
        super().__init__(message)
        self.leaf = leaf


def torus_genus(p: int, q: int) -> int:
    return (abs(p) - 1) * (abs(q) - 1) // 2


def validate_torus(t: Torus) -> None:
    if t.p < 1 or t.q < 1:
        raise KnotError(f"T({t.p},{t.q}): parameters must be positive", t)
    if gcd(t.p, t.q) != 1:
        raise KnotError(f"T({t.p},{t.q}): parameters are not coprime", t)


def validate_cable(c: Cable) -> None:
    """One cabling level of a positive torus knot, above Hedden's bound."""
    if not isinstance(c.child, Torus):
        raise KnotError(f"{NOT_CERTIFIED} (companion must be a torus knot)", c)
    validate_torus(c.child)
    if c.m < 1:
        raise KnotError(f"cable winding m must be positive, got {c.m}", c)
    if gcd(c.m, c.l) != 1:
        raise KnotError(f"cable parameters ({c.m},{c.l}) are not coprime", c)
    g = torus_genus(c.child.p, c.child.q)
    if c.m > 1 and g > 0 and c.l < c.m * (2 * g - 1):
        raise KnotError(f"{NOT_CERTIFIED} ({c.l} < {c.m}*(2g-1) = {c.m * (2 * g - 1)} with g={g})", c)
    if g == 0 and c.l < 1 and c.m > 1:
        raise KnotError(f"{NOT_CERTIFIED} (cable of the unknot with l < 1)", c)


def validate(e) -> None:
    """Check every leaf of an expression tree."""
    if isinstance(e, Torus):
        validate_torus(e)
    elif isinstance(e, Cable):
        validate_cable(e)
    elif isinstance(e, Mirror):
        validate(e.child)
    elif isinstance(e, Sum):
        for ch in e.children:
            validate(ch)
    elif isinstance(e, Repeat):
        if e.n < 1:
            raise KnotError(f"repeat count must be positive, got {e.n}", e)
        validate(e.child)
    elif isinstance(e, RawClass):
        pass
    else:
        raise TypeError(f"not a knot expression: {e!r}")


# sequences from formulas


def hedden_sequence(p: int) -> StepSequence:
    """First half of ``(j, p - j)_{j=1}^{p-1}``."""
    full = expand_notation("(j, p-j)_{j=1}^{p-1}", p=p)
    return seq_normalize(full[: len(full) // 2])


CABLE_X = "(((i, m-i)_1^j, (i-1, m-i+1)_1^{p-j})_{j=1}^{p-1})_{i=1}^m"
CABLE_Y = "(((m-i, i)_1^j, (m-i+1, i-1)_1^{p-j})_{j=1}^{p-1})_{i=1}^m"


def cable_x(p: int, m: int) -> StepSequence:
    """The full sequence ``(x_s)``, ``s = 1..2mp(p-1)``."""
    return expand_notation(CABLE_X, p=p, m=m)


def cable_y(p: int, m: int) -> StepSequence:
    return expand_notation(CABLE_Y, p=p, m=m)


def _window(full: StepSequence, lo: int, hi: int) -> StepSequence:
    """1-based inclusive slice ``(s_lo, ..., s_hi)``."""
    return tuple(full[lo - 1 : hi])


def cable_parameter(p: int, m: int, sign: str) -> int:
    return m * p * (p - 1) + (1 if sign == "+" else -1)


def cable_sequence_route(p: int, m: int, sign: str) -> StepSequence:
    """The staircase from the (x_s)/(y_s) formulas, normalized."""
    n = m * p * (p - 1)
    if sign == "+":
        full = cable_x(p, m)
        return seq_normalize(_window(full, 1, n))
    full = cable_y(p, m)
    # the symmetric window is y_2 .. y_{2n-1}; its first half is y_2 .. y_n
    window = _window(full, 2, 2 * n - 1)
    if window != window[::-1]:
        raise InvariantViolation(f"(y_s) window is not palindromic at p={p}, m={m}")
    return seq_normalize(_window(full, 2, n))


def cable_polynomial_route(p: int, m: int, sign: str) -> StepSequence:
    return lspace_gaps(cable_closed_form(p, m, sign)).gaps


def torus_class(p: int, q: int) -> StepSequence:
    """Staircase steps of T(p, q) from its Alexander polynomial.

    For q = p + 1 the result is checked against ``(j, p - j)``.
    """
    validate_torus(Torus(p, q))
    gaps = lspace_gaps(torus_alexander(p, q)).gaps
    if q == p + 1 and p >= 2 and gaps != hedden_sequence(p):
        raise InvariantViolation(f"T({p},{q}): polynomial gives {gaps}, formula gives {hedden_sequence(p)}")
    return gaps


def cable_class(p: int, m: int, sign: str) -> StepSequence:
    """Steps of the (m, mp(p-1) +- 1)-cable of T(p, p+1), derived both ways."""
    if sign not in ("+", "-"):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    if p < 2 or m < 1:
        raise ValueError(f"need p >= 2 and m >= 1, got p={p}, m={m}")
    if sign == "-" and m * p * (p - 1) - 1 < 2:
        raise ValueError(f"the minus cable is degenerate at p={p}, m={m}")
    seq = cable_sequence_route(p, m, sign)
    poly = cable_polynomial_route(p, m, sign)
    if seq != poly:
        raise InvariantViolation(f"cable ({p},{m},{sign}): formula {seq} != polynomial {poly}")
    # and against the general cabling formula
    general = lspace_gaps(cable_alexander(torus_alexander(p, p + 1), m, cable_parameter(p, m, sign))).gaps
    if general != seq:
        raise InvariantViolation(f"cable ({p},{m},{sign}): closed form disagrees with cabling formula")
    return seq


def _cable_leaf(c: Cable) -> StepSequence:
    validate_cable(c)
    t = c.child
    if t.q == t.p + 1 and t.p >= 2:
        for sign in "+-":
            if c.l == cable_parameter(t.p, c.m, sign) and not (sign == "-" and c.l < 2):
                return cable_class(t.p, c.m, sign)
    poly = cable_alexander(torus_alexander(t.p, t.q), c.m, c.l)
    try:
        return lspace_gaps(poly).gaps
    except NotLSpaceForm as exc:
        raise KnotError(f"{NOT_CERTIFIED} ({exc})", c) from None


def alexander(e) -> LaurentPoly:
    """Alexander polynomial of an expression (multiplicative over sums)."""
    from .laurent import alexander_from_gaps

    if isinstance(e, Torus):
        validate_torus(e)
        return torus_alexander(e.p, e.q)
    if isinstance(e, Cable):
        validate_cable(e)
        return cable_alexander(torus_alexander(e.child.p, e.child.q), e.m, e.l)
    if isinstance(e, Mirror):
        return alexander(e.child)
    if isinstance(e, Repeat):
        f = alexander(e.child)
        out = LaurentPoly.from_dict({0: 1})
        for _ in range(e.n):
            out = out * f
        return out.normalized()
    if isinstance(e, Sum):
        out = LaurentPoly.from_dict({0: 1})
        for ch in e.children:
            out = out * alexander(ch)
        return out.normalized()
    if isinstance(e, RawClass):
        s = seq_normalize(e.seq)
        if any(a < 0 for a in s):
            raise KnotError("a class with negative steps has no staircase Alexander polynomial", e)
        return alexander_from_gaps(s)
    raise TypeError(f"not a knot expression: {e!r}")


def knot_class(e) -> ClassExpr:
    """The formal class sum of an expression."""
    if isinstance(e, Torus):
        return ClassExpr.of(torus_class(e.p, e.q))
    if isinstance(e, Cable):
        return ClassExpr.of(_cable_leaf(e))
    if isinstance(e, Mirror):
        return -knot_class(e.child)
    if isinstance(e, Repeat):
        validate(e)
        return knot_class(e.child).scale(e.n)
    if isinstance(e, Sum):
        out = ClassExpr()
        for ch in e.children:
            out = out + knot_class(ch)
        return out
    if isinstance(e, RawClass):
        return ClassExpr.of(e.seq)
    raise TypeError(f"not a knot expression: {e!r}")


# the K(i, j) family


def kij_params(i: int, j: int) -> tuple[int, int]:
    """``(m, p) = (i + 1, |j| + 3)``."""
    if i < 0 or (i == 0 and j < 0):
        raise ValueError(f"K({i},{j}) is outside the family: need i > 0, or i = 0 and j >= 0")
    return i + 1, abs(j) + 3


def k_ij(i: int, j: int):
    """The knot expression K(i, j) as a difference of two L-space knots."""
    m, p = kij_params(i, j)
    if i > 0:
        plus = Cable(Torus(p, p + 1), m, (p - 1) * p * m + 1)
        if j >= 0:
            return Sum((plus, Mirror(Torus(p * m, p * m + 1))))
        return Sum((plus, Mirror(Cable(Torus(p, p + 1), m, (p - 1) * p * m - 1))))
    h = (p + 1) // 2
    return Sum((Torus(p, p + 1), Mirror(Cable(Torus(2, 3), h, 2 * (p // 2) + 1))))


def arch_representative(i: int, j: int) -> StepSequence:
    """The stated Archimedean representative of K(i, j) for (i, j) > (0, 0).

    For i > 0, j = 0 both closed forms apply and must agree.
    """
    if (i, j) == (0, 0):
        raise ValueError("K(0,0) is the zero class")
    kij_params(i, j)
    if i == 0:
        return (2, j + 1)
    forms = []
    if j >= 0:
        forms.append(tuple(expand_notation("1, i, 1, 2*i+1+j*(i+1)", i=i, j=j)))
    if j <= 0:
        forms.append(tuple(expand_notation("(1, i)_1^{-j}, 1, i, 1, 2*i+1", i=i, j=j)))
    if len(set(forms)) != 1:
        raise InvariantViolation(f"representative formulas disagree at ({i},{j}): {forms}")
    return forms[0]


__all__ = [
    "Cable",
    "KnotError",
    "Mirror",
    "NOT_CERTIFIED",
    "RawClass",
    "Repeat",
    "Sum",
    "Torus",
    "alexander",
    "arch_representative",
    "cable_class",
    "cable_polynomial_route",
    "cable_sequence_route",
    "hedden_sequence",
    "k_ij",
    "kij_params",
    "knot_class",
    "torus_class",
    "validate",
]
