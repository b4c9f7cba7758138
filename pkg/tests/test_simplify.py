from __future__ import annotations

from collections import Counter

import pytest

from floereps import simplify
from floereps.complex import (
    BifilteredComplex,
    dual,
    from_pairs,
    mixed_from_steps,
    relabel,
    staircase_from_steps,
    tensor,
    transpose,
    unknot,
    validate,
)
from floereps.errors import InvariantViolation, Undecided
from floereps.simplify import (
    BasisChange,
    SimplificationFailure,
    apply_changes,
    change_basis,
    classify_acyclic,
    decompose,
    epsilon,
    horizontally_simplify,
    local_invariants,
    reduced_complex,
    reduced_representative,
    simultaneous_simplify,
    tau,
    vertically_distinguished,
    vertically_simplify,
)


def _y(c: BifilteredComplex) -> BifilteredComplex:
    return relabel(c, {g: g.replace("x", "y") for g in c.ids()})


def figure_three() -> BifilteredComplex:
    return tensor(staircase_from_steps([1, 3]), _y(staircase_from_steps([2])))


# the substitutions of the box lemma proof at (i, j) = (1, 1) and the mirror (3, 1)
FIG_3_CHANGES = [
    BasisChange("x0*y1", "x1*y0"),
    BasisChange("x1*y2", "x2*y1"),
    BasisChange("x0*y2", "x2*y0"),
    BasisChange("x4*y1", "x3*y2"),
    BasisChange("x3*y0", "x2*y1"),
    BasisChange("x4*y0", "x2*y2"),
]


def _matching(c: BifilteredComplex, kind: str) -> bool:
    seen = Counter()
    for a in c.arrows_of_kind(kind):
        seen.update(a)
    return all(v == 1 for v in seen.values()) and len(seen) == len(c) - 1


def test_figure_three_basis_changes_split_two_boxes():
    d = apply_changes(figure_three(), FIG_3_CHANGES)
    assert validate(d).ok
    # B'_{1,1}: x1y1 -> both middle elements -> x0y2 + x2y0
    assert {a for a in d.arrows if a[0] in ("x1*y1", "x0*y1", "x1*y2")} == {
        ("x1*y1", "x0*y1"), ("x1*y1", "x1*y2"), ("x0*y1", "x0*y2"), ("x1*y2", "x0*y2"),
    }
    dec = decompose(d)
    assert dec.kinds == ("box", "box")
    assert sorted(sorted(a.ids()) for a in dec.acyclics) == [
        ["x0*y1", "x0*y2", "x1*y1", "x1*y2"],
        ["x3*y0", "x3*y1", "x4*y0", "x4*y1"],
    ]
    assert sorted(dec.core.ids()) == ["x0*y0", "x1*y0", "x2*y0", "x2*y1", "x2*y2", "x3*y2", "x4*y2"]
    assert reduced_representative(d) == [1, 3, 2]


def test_illegal_change_rejected():
    c = staircase_from_steps([1, 2])
    with pytest.raises(ValueError, match="illegal change"):
        change_basis(c, BasisChange("x0", "x1"))  # (1, 3) is not <= (0, 3)
    with pytest.raises(ValueError, match="gradings"):
        change_basis(c, BasisChange("x1", "x0"))


def test_change_twice_is_identity():
    c = figure_three()
    bc = FIG_3_CHANGES[0]
    assert apply_changes(c, [bc, bc]) == c


def test_vertical_simplify_fixes_staircases():
    for c in (staircase_from_steps([1, 2]), dual(staircase_from_steps([1, 2])), unknot()):
        assert vertically_simplify(c) == c
        assert horizontally_simplify(c) == c


def test_vertical_simplify_of_figure_three_is_a_matching():
    c = figure_three()
    assert not _matching(c, "vertical")
    v = vertically_simplify(c)
    assert _matching(v, "vertical")
    assert len(v.arrows_of_kind("vertical")) == (len(c) - 1) // 2


def test_horizontal_simplify_against_transpose():
    c = figure_three()
    h = horizontally_simplify(c)
    assert _matching(h, "horizontal")
    # transpose oracle: the vertical pass on the transposed complex
    assert _matching(vertically_simplify(transpose(c)), "vertical")


def test_vertical_rank_precondition():
    c = from_pairs([("a", 0, 0, 0), ("b", 0, 1, 0)], [])
    with pytest.raises(ValueError, match="rank 2"):
        vertically_simplify(c)


def test_simultaneous_on_staircase_is_unchanged():
    for s in ([1], [1, 2], [2, 1, 1, 3]):
        c = staircase_from_steps(s)
        assert simultaneous_simplify(c) == c


def test_simultaneous_figure_three():
    s = simultaneous_simplify(figure_three())
    dec = decompose(s)
    assert Counter(dec.kinds) == {"box": 2}
    assert reduced_representative(figure_three()) == [1, 3, 2]


def test_simultaneous_log_replays_exactly():
    c = tensor(staircase_from_steps([1, 3, 2]), dual(staircase_from_steps([1, 3])))
    log: list = []
    s = simultaneous_simplify(c, log=log)
    assert log and all(isinstance(x, BasisChange) for x in log)
    assert apply_changes(c, log) == s


def test_k01_summands_reduce_to_two():
    # [T(4,5)] - [cable] with the cable class [1, 3]
    c = tensor(staircase_from_steps([1, 3, 2]), dual(staircase_from_steps([1, 3])))
    assert reduced_representative(c) == [2]


def test_decompose_staircase_has_no_acyclics():
    dec = decompose(staircase_from_steps([1, 2]))
    assert dec.acyclics == () and len(dec.core) == 5


def test_figure_two_a_five_two():
    # [1] plus a box, drawn with the box slightly offset in the figure
    gens = [
        ("x0", 0, 1, 0), ("x1", 1, 1, 1), ("x2", 1, 0, 0),
        ("y0", 0, 1, 0), ("y1", 1, 1, 1), ("y2", 1, 0, 0), ("y3", 0, 0, -1),
    ]
    arrows = [("x1", "x0"), ("x1", "x2"), ("y1", "y0"), ("y1", "y2"), ("y2", "y3"), ("y0", "y3")]
    c = from_pairs(gens, arrows)
    assert validate(c).ok
    assert reduced_representative(c) == [1]
    assert decompose(simultaneous_simplify(c)).kinds == ("box",)
    assert epsilon(c) == 1 and tau(c) == 1


def test_figure_four_polygons():
    # C1 = C2 = [(1,1)^4, 0, 2] = [1,1,1,1,1,1,1,3]
    a = staircase_from_steps([1, 1, 1, 1, 1, 1, 1, 3])
    c = tensor(a, a)
    dec = decompose(simultaneous_simplify(c))
    kinds = Counter(dec.kinds)
    assert kinds == {"polygon(16)": 2, "box": 56}
    # generator accounting: 17 * 17 = core + polygons + boxes
    assert len(c) == 289 == len(dec.core) + 2 * 16 + 56 * 4
    assert reduced_representative(c) == [1, 1, 1, 1, 1, 1, 1, 3] * 2


def test_classify_acyclic_other():
    c = from_pairs([("a", 1, 1, 1), ("b", 0, 1, 0)], [("a", "b")])
    assert classify_acyclic(c) == "other"


def test_decompose_rejects_non_acyclic_side_component():
    c = from_pairs([("a", 0, 0, 0), ("b", 5, 5, 0)], [])
    with pytest.raises(InvariantViolation):
        decompose(c)


def test_reduced_representative_examples():
    assert reduced_representative(unknot()) == []
    assert reduced_representative(staircase_from_steps([2, 1])) == [2, 1]
    assert reduced_representative(mixed_from_steps([3, -1, -2, 2])) == [3, -1, -2, 2]


def test_reduced_complex_relabels_path():
    r = reduced_complex(figure_three())
    assert r.ids() == [f"x{k}" for k in range(7)]
    assert r == staircase_from_steps([1, 3, 2])


def test_epsilon_examples():
    c = staircase_from_steps([1, 2])
    assert epsilon(c) == 1
    assert epsilon(dual(c)) == -1
    assert epsilon(tensor(c, dual(c))) == 0
    assert epsilon(unknot()) == 0


def test_epsilon_undecided_is_not_zero(monkeypatch):
    c = staircase_from_steps([1, 2])

    def give_up(c, *args, **kwargs):
        return SimplificationFailure("stalled", 4, c)

    monkeypatch.setattr(simplify, "simultaneous_simplify", give_up)
    with pytest.raises(Undecided):
        epsilon(c)


def test_tau_examples():
    c = staircase_from_steps([1, 2])
    assert tau(c) == 3
    assert tau(dual(c)) == -3
    assert tau(tensor(c, staircase_from_steps([2]))) == 5


def test_local_invariants_examples():
    assert local_invariants(staircase_from_steps([1, 2])) == simplify.LocalInvariants(1, 2)
    assert local_invariants(mixed_from_steps([3, -1, -2, 2])) == simplify.LocalInvariants(3, None)
    assert local_invariants(unknot()) == simplify.LocalInvariants(None, None)
    assert local_invariants(dual(staircase_from_steps([1, 2]))) == simplify.LocalInvariants(None, None)


def test_distinguished_element_of_staircase():
    assert vertically_distinguished(staircase_from_steps([1, 2])).id == "x0"
