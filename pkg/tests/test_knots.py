from __future__ import annotations

import pytest

from floereps.complex import dual, staircase_from_steps, tensor
from floereps.falg import ClassExpr, class_sequence
from floereps.knots import (
    Cable,
    KnotError,
    Mirror,
    Repeat,
    Sum,
    Torus,
    alexander,
    arch_representative,
    cable_class,
    cable_polynomial_route,
    cable_sequence_route,
    hedden_sequence,
    k_ij,
    kij_params,
    knot_class,
    torus_class,
)
from floereps.laurent import torus_alexander
from floereps.simplify import reduced_representative


def test_torus_class_examples():
    assert torus_class(3, 4) == (1, 2)
    assert torus_class(4, 5) == (1, 3, 2)
    assert torus_class(2, 3) == (1,)
    assert torus_class(1, 7) == ()


@pytest.mark.parametrize("p", range(2, 7))
def test_torus_matches_corollary_sequence(p):
    pairs = []
    for j in range(1, p):
        pairs += [j, p - j]
    assert torus_class(p, p + 1) == hedden_sequence(p)
    # the first half of (j, p-j) with zeros merged; no zeros occur here
    assert list(torus_class(p, p + 1)) == pairs[: len(pairs) // 2]


def test_torus_general_q():
    assert sum(torus_class(3, 5)) == 4  # genus (2)(4)/2
    with pytest.raises(KnotError):
        torus_class(2, 4)


@pytest.mark.parametrize("p", range(2, 6))
def test_cable_m1_plus_is_next_torus(p):
    assert cable_class(p, 1, "+") == torus_class(p, p + 1)


def test_cable_examples():
    assert cable_class(3, 2, "+") == (1, 5, 1, 1, 1, 3)
    assert cable_class(2, 2, "+") == (1, 3)


@pytest.mark.parametrize("p", range(2, 5))
@pytest.mark.parametrize("m", range(1, 4))
@pytest.mark.parametrize("sign", "+-")
def test_cable_routes_agree_and_genus(p, m, sign):
    if sign == "-" and (p, m) == (2, 1):
        with pytest.raises(ValueError):
            cable_class(p, m, sign)
        return
    seq = cable_class(p, m, sign)
    assert seq == cable_sequence_route(p, m, sign) == cable_polynomial_route(p, m, sign)
    assert all(a > 0 for a in seq)
    g = p * (p - 1) // 2
    l = m * p * (p - 1) + (1 if sign == "+" else -1)
    assert sum(seq) == m * g + (m - 1) * (l - 1) // 2


def test_cable_rejects_bad_arguments():
    with pytest.raises(ValueError):
        cable_class(3, 1, "x")
    with pytest.raises(ValueError):
        cable_class(1, 2, "+")


def test_knot_class_examples():
    assert knot_class(Torus(3, 4)) == ClassExpr.of([1, 2])
    assert knot_class(Mirror(Torus(3, 4))) == ClassExpr.of([1, 2], -1)
    assert knot_class(Repeat(2, Torus(2, 3))) == ClassExpr.of([1], 2)
    with pytest.raises(KnotError, match="not a certified L-space knot"):
        knot_class(Cable(Torus(2, 3), 2, 1))


def test_cable_of_general_torus():
    # (2, 7) cable of T(2,3) is above the bound 2 * (2g - 1) = 2
    seq = class_sequence(knot_class(Cable(Torus(2, 3), 2, 7)))
    assert sum(seq) == 2 * 1 + (2 - 1) * (7 - 1) // 2


def test_alexander_is_multiplicative():
    f = alexander(Sum((Torus(2, 3), Mirror(Torus(2, 3)))))
    assert f == torus_alexander(2, 3) * torus_alexander(2, 3)


def test_k00_is_zero_through_full_pipeline():
    e = k_ij(0, 0)
    assert e == Sum((Torus(3, 4), Mirror(Cable(Torus(2, 3), 2, 3))))
    assert knot_class(e).is_zero()
    # the (2, 3) cable of T(2, 3) is the minus cable at p = 2, m = 2
    cable = knot_class(Cable(Torus(2, 3), 2, 3)).single()
    assert cable == cable_class(2, 2, "-") == (1, 2)
    # realize both leaves, tensor with the dual, simplify with diagonals kept
    c = tensor(staircase_from_steps(torus_class(3, 4)), dual(staircase_from_steps(cable)))
    assert reduced_representative(c) == []


def test_k01_is_two():
    k = knot_class(k_ij(0, 1))
    # [1, 3, 2] - [1, 3]: T(4,5) minus the (2, 5)-cable of the trefoil
    assert k == ClassExpr.of([1, 3, 2]) - ClassExpr.of([1, 3])
    assert class_sequence(k) == (2,)
    assert arch_representative(0, 1) == (2, 2)


def test_arch_representatives():
    assert arch_representative(1, 0) == (1, 1, 1, 3)
    assert arch_representative(1, 1) == (1, 1, 1, 5)
    assert arch_representative(1, -1) == (1, 1, 1, 1, 1, 3)
    assert arch_representative(2, 0) == (1, 2, 1, 5)
    with pytest.raises(ValueError):
        arch_representative(0, 0)


def test_kij_domain():
    assert kij_params(1, -2) == (2, 5)
    for bad in ((0, -1), (-1, 0)):
        with pytest.raises(ValueError):
            kij_params(*bad)
        with pytest.raises(ValueError):
            k_ij(*bad)


def test_kij_case_shapes():
    # i > 0, j >= 0: plus cable minus a torus knot
    assert k_ij(1, 0) == Sum((Cable(Torus(3, 4), 2, 13), Mirror(Torus(6, 7))))
    # i > 0, j < 0: difference of the two cables
    assert k_ij(1, -1) == Sum((Cable(Torus(4, 5), 2, 25), Mirror(Cable(Torus(4, 5), 2, 23))))
