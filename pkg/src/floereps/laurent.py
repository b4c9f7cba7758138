"""Exact Laurent polynomials and Alexander polynomials of torus knots and cables."""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Mapping

from .errors import NotLSpaceForm

# Exponents stay machine-sized; coefficients are Python ints.
MAX_EXPONENT = 2**31


@dataclass(frozen=True)
class LaurentPoly:
    """Integer Laurent polynomial in ``t``.

    Stored as a sorted tuple of ``(exponent, coefficient)`` pairs with no
    zero coefficients, so ``==`` is coefficient-wise equality.
    """

    terms: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        for e, c in self.terms:
            if c == 0:
                raise ValueError("zero coefficient stored")
            if abs(e) > MAX_EXPONENT:
                raise OverflowError(f"exponent {e} exceeds {MAX_EXPONENT}")

    @classmethod
    def from_dict(cls, coeffs: Mapping[int, int]) -> LaurentPoly:
        return cls(tuple(sorted((e, c) for e, c in coeffs.items() if c != 0)))

    @classmethod
    def from_list(cls, coeffs: Iterable[int], start: int = 0) -> LaurentPoly:
        """Dense coefficient list, lowest exponent first."""
        return cls.from_dict({start + k: c for k, c in enumerate(coeffs)})

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> LaurentPoly:
        return cls.from_dict({e: c})

    @classmethod
    def one(cls) -> LaurentPoly:
        return cls(((0, 1),))

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        if not self.terms:
            raise ValueError("degree of the zero polynomial")
        return self.terms[-1][0]

    def valuation(self) -> int:
        if not self.terms:
            raise ValueError("valuation of the zero polynomial")
        return self.terms[0][0]

    def coefficients(self) -> list[int]:
        """Dense list from the valuation up to the degree."""
        if not self.terms:
            return []
        d = self.as_dict()
        lo = self.valuation()
        return [d.get(e, 0) for e in range(lo, self.degree() + 1)]

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        d = self.as_dict()
        for e, c in other.terms:
            d[e] = d.get(e, 0) + c
        return LaurentPoly.from_dict(d)

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        return self + (-other)

    def __mul__(self, other: LaurentPoly | int) -> LaurentPoly:
        if isinstance(other, int):
            return LaurentPoly.from_dict({e: c * other for e, c in self.terms})
        d: dict[int, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                d[e1 + e2] = d.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly.from_dict(d)

    __rmul__ = __mul__

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by ``t**k``."""
        return LaurentPoly(tuple((e + k, c) for e, c in self.terms))

    def substitute_power(self, p: int) -> LaurentPoly:
        """Return ``f(t**p)``."""
        if p <= 0:
            raise ValueError("power must be positive")
        return LaurentPoly(tuple((e * p, c) for e, c in self.terms))

    def normalized(self) -> LaurentPoly:
        """Multiply by ``±t**k`` so the lowest exponent is 0 with positive coefficient."""
        if not self.terms:
            return self
        e0, c0 = self.terms[0]
        out = self.shift(-e0)
        return -out if c0 < 0 else out

    def divmod(self, divisor: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
        """Long division over the integers by a divisor with unit leading coefficient."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        dd, dc = divisor.terms[-1]
        if dc not in (1, -1):
            raise ValueError("divisor must have leading coefficient +-1")
        rem = self.as_dict()
        quot: dict[int, int] = {}
        while rem:
            top = max(rem)
            if top < dd:
                break
            c = rem[top] * dc
            k = top - dd
            quot[k] = c
            for e, ce in divisor.terms:
                v = rem.get(e + k, 0) - c * ce
                if v:
                    rem[e + k] = v
                else:
                    rem.pop(e + k, None)
        return LaurentPoly.from_dict(quot), LaurentPoly.from_dict(rem)

    def exact_div(self, divisor: LaurentPoly) -> LaurentPoly:
        q, r = self.divmod(divisor)
        if not r.is_zero():
            raise ArithmeticError(f"inexact division: remainder {r}")
        return q

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({format_poly(self)!r})"


def format_poly(f: LaurentPoly) -> str:
    """Render as ``1 - t + t^3 - t^5 + t^6`` (ascending exponents, explicit signs)."""
    if f.is_zero():
        return "0"
    parts = []
    for k, (e, c) in enumerate(f.terms):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if e == 0:
            body = str(a)
        else:
            mono = "t" if e == 1 else f"t^{e}"
            body = mono if a == 1 else f"{a}{mono}"
        if k == 0:
            parts.append(body if sign == "+" else "-" + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


_TERM = re.compile(r"\s*([+-])?\s*(\d+)?(t(?:\^(-?\d+))?)?\s*")


def parse_poly(text: str) -> LaurentPoly:
    """Inverse of :func:`format_poly`; also accepts looser spacing."""
    s = text.strip()
    if s == "0":
        return LaurentPoly()
    d: dict[int, int] = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or not (m.group(2) or m.group(3)):
            raise ValueError(f"cannot parse polynomial at offset {pos}: {text!r}")
        if not first and not m.group(1):
            raise ValueError(f"missing sign at offset {pos}: {text!r}")
        c = int(m.group(2)) if m.group(2) else 1
        if m.group(1) == "-":
            c = -c
        if m.group(3):
            e = int(m.group(4)) if m.group(4) is not None else 1
        else:
            e = 0
        d[e] = d.get(e, 0) + c
        pos = m.end()
        first = False
    return LaurentPoly.from_dict(d)


def _t_power_minus_one(k: int) -> LaurentPoly:
    return LaurentPoly.from_dict({k: 1, 0: -1})


def _geometric(step: int, count: int, start: int = 0) -> LaurentPoly:
    """``sum_{i=0}^{count-1} t**(start + i*step)``."""
    d: dict[int, int] = {}
    for i in range(count):
        e = start + i * step
        d[e] = d.get(e, 0) + 1
    return LaurentPoly.from_dict(d)


def torus_alexander(p: int, q: int) -> LaurentPoly:
    """Alexander polynomial of the torus knot T(p, q), normalized.

    >>> str(torus_alexander(3, 4))
    '1 - t + t^3 - t^5 + t^6'
    """
    if p < 1 or q < 1:
        raise ValueError(f"torus parameters must be positive, got ({p}, {q})")
    if gcd(p, q) != 1:
        raise ValueError(f"T({p},{q}) is not a knot: gcd({p},{q}) = {gcd(p, q)} != 1")
    if p * q > MAX_EXPONENT:
        raise OverflowError("p*q exceeds the exponent bound")
    num = _t_power_minus_one(p * q) * _t_power_minus_one(1)
    den = _t_power_minus_one(p) * _t_power_minus_one(q)
    return num.exact_div(den).normalized()


def cable_alexander(delta: LaurentPoly, p: int, q: int) -> LaurentPoly:
    """Alexander polynomial of the (p, q)-cable of a knot with polynomial ``delta``.

    ``p`` is the longitudinal winding. A negative ``q`` gives the same
    polynomial as ``|q|``.
    """
    if p < 1 or q == 0:
        raise ValueError(f"cable parameters out of range: ({p}, {q})")
    if gcd(p, q) != 1:
        raise ValueError(f"({p},{q})-cable needs coprime parameters; gcd = {gcd(p, q)}")
    if not delta.is_zero() and p * max(abs(delta.degree()), abs(delta.valuation())) > MAX_EXPONENT:
        raise OverflowError("cable exponent exceeds the bound")
    return (delta.substitute_power(p) * torus_alexander(p, abs(q))).normalized()


def cable_closed_form(p: int, m: int, sign: str) -> LaurentPoly:
    """Closed form for the (m, mp(p-1) +- 1)-cable of T(p, p+1).

    ``sign`` is ``"+"`` or ``"-"``. The minus form is only valid when the
    cabling parameter mp(p-1) - 1 is at least 2; the boundary case p = 2,
    m = 1 is rejected.
    """
    if sign not in ("+", "-"):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    if p < 2 or m < 1:
        raise ValueError(f"need p >= 2 and m >= 1, got p={p}, m={m}")
    n = m * p * (p - 1)
    if sign == "-" and n - 1 < 2:
        raise ValueError(f"minus closed form undefined at p={p}, m={m} (cabling parameter {n - 1})")
    if m * m * p * p > MAX_EXPONENT:
        raise OverflowError("cable exponent exceeds the bound")

    shift = -1 if sign == "+" else 1
    inner: dict[int, int] = {}
    for j in range(p - 1):
        for k in range(p):
            e = j * m * p + k * m + (0 if k <= j else shift)
            inner[e] = inner.get(e, 0) + 1
    inner_poly = LaurentPoly.from_dict(inner)

    if sign == "+":
        outer = _geometric(m * p * p - m * p + 1, m)
        return _geometric(m, n + 1) - (outer * inner_poly).shift(1)
    outer = _geometric(m * p * p - m * p - 1, m)
    return outer * inner_poly - _geometric(m, n - 1).shift(1)


@dataclass(frozen=True)
class GapSequence:
    """First half of the exponent gaps of an L-space Alexander polynomial."""

    gaps: tuple[int, ...]
    genus: int

    @property
    def full(self) -> tuple[int, ...]:
        return self.gaps + self.gaps[::-1]


def lspace_gaps(delta: LaurentPoly) -> GapSequence:
    """Read the staircase step lengths off an Alexander polynomial.

    The polynomial must be of the form ``sum (-1)**i t**n_i`` with an odd
    number of terms and symmetric exponents, after normalization.
    """
    f = delta.normalized()
    if f.is_zero():
        raise NotLSpaceForm("not of L-space form: zero polynomial")
    exps = [e for e, _ in f.terms]
    for k, (e, c) in enumerate(f.terms):
        if abs(c) != 1:
            raise NotLSpaceForm(f"not of L-space form: coefficient {c} at t^{e}")
        if c != (-1) ** k:
            raise NotLSpaceForm(f"not of L-space form: signs do not alternate at t^{e}")
    if len(exps) % 2 == 0:
        raise NotLSpaceForm(f"not of L-space form: {len(exps)} terms (need an odd count)")
    full = tuple(b - a for a, b in zip(exps, exps[1:]))
    if full != full[::-1]:
        raise NotLSpaceForm("not of L-space form: exponent gaps are not palindromic")
    half = full[: len(full) // 2]
    genus = sum(half)
    assert 2 * genus == exps[-1]
    return GapSequence(half, genus)


def alexander_from_gaps(gaps: Iterable[int]) -> LaurentPoly:
    """Inverse of :func:`lspace_gaps` for positive gap sequences."""
    half = tuple(gaps)
    if any(g <= 0 for g in half):
        raise ValueError("gaps must be positive")
    n = 0
    d = {0: 1}
    for k, g in enumerate(half + half[::-1], start=1):
        n += g
        d[n] = (-1) ** k
    return LaurentPoly.from_dict(d)
