from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from floereps.errors import InvariantViolation
from floereps.falg import (
    ClassExpr,
    arch_compare,
    box_hypothesis,
    class_add,
    class_compare,
    class_epsilon,
    class_sequence,
    difference_epsilons,
    expand_notation,
    multiple_sequence,
    order_i_hypothesis,
    order_j_hypothesis,
    polygon_hypothesis,
    seq_normalize,
)


def corner_oracle(half: list[int]) -> list[int]:
    """Normalize a nonnegative half sequence by walking its staircase.

    Zero steps create repeated points and collinear runs; dropping both
    and reading the lengths back gives the merged sequence.
    """
    full = list(half) + list(half)[::-1]
    x, y = 0, sum(half)
    pts = [(x, y)]
    for k, a in enumerate(full):
        if k % 2 == 0:
            x += a
        else:
            y -= a
        pts.append((x, y))
    dedup = [pts[0]]
    for p in pts[1:]:
        if p != dedup[-1]:
            dedup.append(p)
    corners = [dedup[0]]
    for k in range(1, len(dedup) - 1):
        a, b, c = corners[-1], dedup[k], dedup[k + 1]
        if (a[0] == b[0] == c[0]) or (a[1] == b[1] == c[1]):
            continue
        corners.append(b)
    if len(dedup) > 1:
        corners.append(dedup[-1])
    steps = [abs(q[0] - p[0]) + abs(q[1] - p[1]) for p, q in zip(corners, corners[1:])]
    return steps[: len(steps) // 2]


def test_normalize_examples():
    assert seq_normalize([1, 0, 2]) == (3,)
    assert seq_normalize([]) == ()
    s = [1, 1, 0, 2, 0, 2, 1, 1, 1, 1, 0, 2]
    assert corner_oracle(s) == [1, 5, 1, 1, 1, 3]
    assert seq_normalize(s) == (1, 5, 1, 1, 1, 3)


@given(st.integers(1, 4), st.lists(st.integers(0, 4), max_size=7))
def test_normalize_matches_corner_oracle(first, rest):
    # a leading zero would start the walk vertically, which no staircase does
    s = [first] + rest
    assert list(seq_normalize(s)) == corner_oracle(s)


@given(st.lists(st.integers(-3, 3), max_size=8))
def test_normalize_idempotent(s):
    once = seq_normalize(s)
    assert seq_normalize(once) == once
    assert 0 not in once


def test_expand_examples():
    assert expand_notation("(1,1)_1^2, 1, 3") == (1, 1, 1, 1, 1, 3)
    assert expand_notation("(1,a)_1^0, 1, a+d", a=1, d=0) == (1, 1)


def test_expand_cable_x_against_nested_loops():
    p, m = 3, 2
    oracle = []
    for i in range(1, m + 1):
        for j in range(1, p):
            oracle += [i, m - i] * j + [i - 1, m - i + 1] * (p - j)
    got = expand_notation("(((i, m-i)_1^j, (i-1, m-i+1)_1^{p-j})_{j=1}^{p-1})_{i=1}^m", p=p, m=m)
    assert list(got) == oracle and len(got) == 24
    assert seq_normalize(got[:12]) == (1, 5, 1, 1, 1, 3)


@pytest.mark.parametrize("bad", ["(1,2", "1,,2", "(1)_1^x", "1 2", "(1)_1^{-1}"])
def test_expand_rejects_malformed(bad):
    with pytest.raises(ValueError):
        expand_notation(bad)


@given(st.lists(st.integers(0, 3), min_size=1, max_size=5), st.integers(0, 5))
def test_empty_repetition_insert_is_invisible(items, at):
    at = min(at, len(items))
    base = ", ".join(map(str, items))
    parts = [str(x) for x in items]
    parts.insert(at, "(7, 9)_1^0")
    assert seq_normalize(expand_notation(", ".join(parts))) == seq_normalize(expand_notation(base))


def test_class_expr_algebra():
    a = ClassExpr.of([1, 2])
    assert (a - a).is_zero()
    assert (a + a).terms == ((2, (1, 2)),)
    assert a.scale(3).tau() == 9
    assert str(a - ClassExpr.of([2])) == "[1, 2] - [2]"
    assert ClassExpr.of([1, 0, 2]).single() == (3,)


def test_class_add_box():
    r = class_add([1, 3], [2], verify=True)
    assert r.seq == (1, 3, 2) and r.path == "box" and r.verified


def test_class_add_polygon():
    r = class_add([1, 1, 1, 3], [1, 1, 1, 1, 1, 2], verify=True)
    assert r.seq == (1, 1, 1, 3, 1, 1, 1, 1, 1, 2)
    assert r.path == "polygon" and r.verified
    assert r.params["q"] == 2 and r.params["d"] == 1 and r.params["blocks"] == [(1, 2)]


def test_class_add_inverse_pair():
    r = class_add([1, 2], ClassExpr.of([1, 2], -1))
    assert r.seq == () and r.path == "general"


def test_class_add_general_path():
    # [1] + [2] fails the box hypothesis (length 1) so it is tensored
    r = class_add([1], [2])
    assert r.path == "general" and r.seq == class_sequence(ClassExpr.of([1]) + ClassExpr.of([2]))


def test_class_add_disagreement_raises(monkeypatch):
    import floereps.falg as falg

    monkeypatch.setattr(falg, "class_sequence", lambda e: (9,))
    with pytest.raises(InvariantViolation):
        class_add([1, 3], [2], verify=True)


def test_class_compare_examples():
    assert class_compare([1, 2], [2, 2]) == ">"
    assert class_compare([1, 3], [1, 2]) == ">"
    assert class_compare([1, 2], [1, 2]) == "="
    assert class_compare([2, 2], [1, 2]) == "<"


def test_arch_order_j_certificate():
    v = arch_compare([1, 1, 1, 2], [1, 1, 1, 1, 1, 2], 3)
    assert v.relation == "much-greater" and v.certificate == "lemma-order-j"
    assert v.witnesses[0]["a"] == 1 and v.witnesses[0]["p"] == 1 and v.witnesses[0]["q"] == 2


def test_arch_equal_and_order_i():
    assert arch_compare([1, 2], [1, 2], 5).relation == "equal"
    v = arch_compare([1, 2], [2, 2], 3)
    assert (v.relation, v.certificate) == ("much-greater", "lemma-order-i")
    w = arch_compare([2, 2], [1, 2], 3)
    assert w.relation == "much-less"


def test_arch_sampled_is_flagged():
    # [2] against [2, 2]: no lemma covers a single entry, so only samples
    v = arch_compare([2], [2, 2], 3)
    assert v.sampled and v.certificate == "epsilon-sample(3)"
    assert v.relation == "equivalent"
    assert set(v.to_dict()) == {"relation", "certificate", "n_max", "witnesses"}


def test_arch_rejects_bad_n():
    with pytest.raises(ValueError):
        arch_compare([1], [1], 0)


def test_hypothesis_matchers():
    assert box_hypothesis([1, 3], [2]) and not box_hypothesis([1, 3], [4])
    assert not box_hypothesis([1], [1])  # m must be even
    assert polygon_hypothesis([1, 1, 1, 3], [1, 1, 1, 1, 1, 2])
    assert polygon_hypothesis([1, 1, 1, 1, 1, 3], [1, 1, 1, 2]) is None  # q < p
    assert order_i_hypothesis([1, 3], [1, 2]) and order_i_hypothesis([1, 2], [2, 1])
    assert not order_i_hypothesis([1, 2], [1, 2])
    assert order_j_hypothesis([1, 1, 1, 3], [1, 1, 1, 2])  # q = p, d < c
    assert order_j_hypothesis([1, 1, 1, 2], [1, 1, 1, 3]) is None


def test_multiple_uses_polygon_collapse():
    # r copies of [1, 1, 1, 2] concatenate by the polygon lemma
    assert multiple_sequence([1, 1, 1, 2], 3) == (1, 1, 1, 2) * 3
    assert multiple_sequence([2], 2) == (2, 2)


def test_difference_epsilons():
    assert difference_epsilons(ClassExpr.of([1, 2]), ClassExpr.of([2, 2]), 3) == [1, 1, 1]
    assert difference_epsilons(ClassExpr.of([2]), ClassExpr.of([2]), 1) == [0]


pos_seqs = st.lists(st.integers(1, 4), min_size=1, max_size=3).map(tuple)


@settings(max_examples=40, deadline=None)
@given(pos_seqs, pos_seqs)
def test_fast_path_agrees_with_general(a, b):
    r = class_add(a, b, verify=True)  # raises on disagreement
    assert r.undecided or sum(r.seq) == sum(a) + sum(b)


@settings(max_examples=40, deadline=None)
@given(pos_seqs, pos_seqs)
def test_compare_antisymmetric(a, b):
    ab, ba = class_compare(a, b), class_compare(b, a)
    assert {ab, ba} in ({"<", ">"}, {"="}) or "undecided" in (ab, ba)
    assert class_compare(a, a) == "="


@settings(max_examples=30, deadline=None)
@given(pos_seqs, pos_seqs)
def test_lemma_certificates_agree_with_samples(a, b):
    v = arch_compare(a, b, 3, check=True)  # raises on disagreement
    if v.certificate in ("lemma-order-i", "lemma-order-j"):
        assert v.relation in ("much-greater", "much-less")


@settings(max_examples=40, deadline=None)
@given(pos_seqs, pos_seqs)
def test_tau_additive(a, b):
    s = class_sequence(ClassExpr.of(a) + ClassExpr.of(b))
    assert sum(s) == sum(a) + sum(b)
    assert class_epsilon(ClassExpr.of(a) - ClassExpr.of(a)) == 0


@st.composite
def box_instances(draw):
    lo = draw(st.integers(1, 3))
    hi = draw(st.integers(lo, 4))
    half = draw(st.integers(1, 2))  # m = 2 or 4
    a = []
    for _ in range(half):
        a += [draw(st.integers(1, lo)), draw(st.integers(hi, 4))]
    b = draw(st.lists(st.integers(lo, hi), min_size=1, max_size=6 - len(a) if len(a) < 6 else 2))
    return tuple(a), tuple(b)


@st.composite
def polygon_instances(draw):
    x = draw(st.integers(1, 2))
    p = draw(st.integers(0, 1))
    q = draw(st.integers(p, 2))
    c = draw(st.integers(1, 2))
    d = draw(st.integers(0, c))
    a = (1, x) * p + (1, x + c)
    b = (1, x) * q + (1, x + d)
    return a, b


@settings(max_examples=25, deadline=None)
@given(st.one_of(box_instances(), polygon_instances()))
def test_lemma_instances_fast_path_verified(pair):
    a, b = pair
    r = class_add(a, b, verify=True)
    assert r.path in ("box", "polygon") and r.verified
    assert r.seq == seq_normalize(r.seq)
