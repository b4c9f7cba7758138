from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from floereps.knots import Cable, Mirror, RawClass, Sum, Torus, k_ij, knot_class
from floereps.parser import MAX_REPEAT, ParseError, parse_expr, to_text


def test_k00_expression():
    e = parse_expr("T(3,4) - C(T(2,3);2,3)")
    assert e == Sum((Torus(3, 4), Mirror(Cable(Torus(2, 3), 2, 3))))
    assert e == k_ij(0, 0)
    assert knot_class(e).is_zero()


def test_repeat_is_flat_sum():
    assert parse_expr("2*T(2,3)") == Sum((Torus(2, 3), Torus(2, 3)))
    assert parse_expr("1*T(2,3)") == Torus(2, 3)


def test_syntax_error_offset():
    with pytest.raises(ParseError) as info:
        parse_expr("T(3")
    assert info.value.offset == 3
    assert info.value.caret() == "T(3\n   ^"


@pytest.mark.parametrize(
    "text,offset",
    [("", 0), ("T(3,4) +", 8), ("X", 0), ("S[1,", 4), ("T(3,4))", 6), ("0*T(2,3)", 0)],
)
def test_error_offsets(text, offset):
    with pytest.raises(ParseError) as info:
        parse_expr(text)
    assert info.value.offset == offset


def test_semantic_errors_name_the_leaf():
    with pytest.raises(ParseError, match="not coprime") as info:
        parse_expr("T(3,4) + T(2,4)")
    assert info.value.offset == 9
    with pytest.raises(ParseError, match=r"not a certified L-space knot.*C\(T\(2,3\);2,1\)"):
        parse_expr("C(T(2,3);2,1)")
    with pytest.raises(ParseError, match="outside the family"):
        parse_expr("K(0,-1)")


def test_repeat_bound():
    parse_expr(f"{MAX_REPEAT}*T(2,3)")
    with pytest.raises(ParseError, match="repeat count"):
        parse_expr(f"{MAX_REPEAT + 1}*T(2,3)")


def test_k_atom_expands():
    assert parse_expr("K(1,-1)") == k_ij(1, -1)
    assert parse_expr("-S[1,2]") == Mirror(RawClass((1, 2)))
    assert parse_expr(" ( T(2,3) ) ") == Torus(2, 3)


tori = st.sampled_from([Torus(2, 3), Torus(3, 4), Torus(2, 5), Torus(3, 5), Torus(1, 1)])
leaves = st.one_of(
    tori,
    st.lists(st.integers(-3, 3), max_size=3).map(lambda s: RawClass(tuple(s))),
    st.just(Cable(Torus(2, 3), 2, 7)),
)
exprs = st.recursive(
    leaves,
    lambda kids: st.one_of(
        kids.map(Mirror),
        st.lists(kids, min_size=2, max_size=3).map(lambda cs: Sum(tuple(cs))),
    ),
    max_leaves=6,
)


@given(exprs)
def test_print_parse_round_trip(e):
    assert parse_expr(to_text(e)) == e
