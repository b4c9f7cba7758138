from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from floereps.errors import NotLSpaceForm
from floereps.laurent import (
    LaurentPoly,
    alexander_from_gaps,
    cable_alexander,
    cable_closed_form,
    format_poly,
    lspace_gaps,
    parse_poly,
    torus_alexander,
)


# dense integer lists, lowest degree first; an oracle independent of LaurentPoly


def conv(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def t_minus_one(k: int) -> list[int]:
    return [-1] + [0] * (k - 1) + [1]


def at_power(a: list[int], p: int) -> list[int]:
    out = [0] * ((len(a) - 1) * p + 1)
    for i, x in enumerate(a):
        out[i * p] = x
    return out


def dense(f: LaurentPoly) -> list[int]:
    return f.coefficients()


def test_torus_3_4_matches_figure_one():
    assert format_poly(torus_alexander(3, 4)) == "1 - t + t^3 - t^5 + t^6"


def test_torus_1_q_is_unknot():
    for q in range(1, 6):
        assert torus_alexander(1, q) == LaurentPoly.one()


def test_torus_2_3_by_long_division_oracle():
    # (1 - t + t^2)(t^2 - 1)(t^3 - 1) == (t^6 - 1)(t - 1)
    got = dense(torus_alexander(2, 3))
    assert got == [1, -1, 1]
    assert conv(conv(got, t_minus_one(2)), t_minus_one(3)) == conv(t_minus_one(6), t_minus_one(1))


@pytest.mark.parametrize("p,q", [(2, 3), (2, 5), (3, 4), (3, 5), (4, 5), (5, 7)])
def test_torus_polynomial_times_denominator(p, q):
    f = dense(torus_alexander(p, q))
    assert conv(conv(f, t_minus_one(p)), t_minus_one(q)) == conv(t_minus_one(p * q), t_minus_one(1))


def test_torus_rejects_non_coprime():
    with pytest.raises(ValueError, match="gcd"):
        torus_alexander(2, 4)


def test_cable_of_trefoil_2_3_is_t34_polynomial():
    # hand product (1 - t^2 + t^4)(1 - t + t^2)
    oracle = conv(at_power([1, -1, 1], 2), [1, -1, 1])
    got = cable_alexander(torus_alexander(2, 3), 2, 3)
    assert dense(got) == oracle == [1, -1, 0, 1, 0, -1, 1]
    assert got == torus_alexander(3, 4)


def test_cable_of_unknot_and_trivial_cabling():
    assert cable_alexander(LaurentPoly.one(), 3, 5) == torus_alexander(3, 5)
    f = torus_alexander(3, 4)
    assert cable_alexander(f, 1, 1) == f


def test_cable_rejects_non_coprime():
    with pytest.raises(ValueError):
        cable_alexander(torus_alexander(2, 3), 2, 4)


def test_closed_form_p2_m1_plus_is_trefoil():
    # (1 + t + t^2) - 2t by hand
    assert dense(cable_closed_form(2, 1, "+")) == [1, -1, 1]


@pytest.mark.parametrize("sign,q", [("+", 13), ("-", 11)])
def test_closed_form_3_2_against_product_oracle(sign, q):
    companion = [1, -1, 0, 1, 0, -1, 1]  # T(3,4)
    # Delta_K(t^2) * Delta_{T(2,q)}(t), with Delta_{T(2,q)} = sum (-t)^k
    oracle = conv(at_power(companion, 2), [(-1) ** k for k in range(q)])
    assert dense(cable_closed_form(3, 2, sign)) == oracle


def test_closed_form_rejects_degenerate_minus():
    with pytest.raises(ValueError):
        cable_closed_form(2, 1, "-")
    with pytest.raises(ValueError):
        cable_closed_form(1, 1, "+")


def test_lspace_gaps_of_t34():
    g = lspace_gaps(torus_alexander(3, 4))
    assert g.gaps == (1, 2) and g.genus == 3
    assert g.full == (1, 2, 2, 1)


def test_lspace_gaps_of_unknot():
    g = lspace_gaps(LaurentPoly.one())
    assert g.gaps == () and g.genus == 0


@pytest.mark.parametrize(
    "f",
    [
        LaurentPoly.from_list([1, 1]),  # signs do not alternate
        LaurentPoly.from_list([1, -2, 1]),  # coefficient 2
        LaurentPoly.from_list([1, -1]),  # even term count
        LaurentPoly.from_list([1, -1, 0, 1, -1, 0, 0, 1]),  # gaps not palindromic
    ],
)
def test_lspace_gaps_rejects(f):
    with pytest.raises(NotLSpaceForm, match="not of L-space form"):
        lspace_gaps(f)


def test_division_and_remainder():
    q, r = LaurentPoly.from_list([-1, 0, 0, 1]).divmod(LaurentPoly.from_list([-1, 1]))
    assert dense(q) == [1, 1, 1] and r.is_zero()
    with pytest.raises(ArithmeticError):
        LaurentPoly.from_list([1, 0, 1]).exact_div(LaurentPoly.from_list([-1, 1]))


polys = st.dictionaries(st.integers(-6, 6), st.integers(-3, 3)).map(LaurentPoly.from_dict)


@given(polys)
def test_format_parse_round_trip(f):
    assert parse_poly(format_poly(f)) == f


@given(polys, polys, polys)
def test_ring_laws(f, g, h):
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert f - f == LaurentPoly()


@given(st.lists(st.integers(1, 5), max_size=5))
def test_gaps_round_trip(gaps):
    f = alexander_from_gaps(gaps)
    assert lspace_gaps(f).gaps == tuple(gaps)
    # Delta(1) = 1 for every staircase
    assert sum(c for _, c in f.terms) == 1
