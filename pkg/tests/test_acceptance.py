"""Acceptance criteria 1-9, each at exact equality and within its time budget.

Every criterion prints one line ``criterion N: PASS|FAIL ...`` whether or
not pytest captures output. Run this file directly to get the same lines
without pytest.
"""

from __future__ import annotations

import sys
import time

import pytest

from floereps.complex import staircase_from_steps
from floereps.verify import run_check


def _line(n: int, ok: bool, text: str, seconds: float, budget: float) -> str:
    return f"criterion {n}: {'PASS' if ok else 'FAIL'} {text} ({seconds:.1f}s of {budget:.0f}s)"


def _emit(request, line: str) -> None:
    capman = request.config.pluginmanager.getplugin("capturemanager") if request else None
    if capman:
        with capman.global_and_fixture_disabled():
            print("\n" + line, flush=True)
    else:
        print(line, flush=True)


def _checks(*runs: tuple[str, dict]) -> tuple[bool, str]:
    ok, parts = True, []
    for check_id, flags in runs:
        rep = run_check(check_id, flags)
        c = rep.counts()
        ok = ok and rep.status == "pass"
        parts.append(f"{check_id} {c['pass']}/{len(rep.outcomes)} pass")
        for o in rep.outcomes:
            if o.status != "pass":
                parts.append(f"[{o.status} {o.params}: {o.note}]")
    return ok, "; ".join(parts)


def criterion_2() -> tuple[bool, str]:
    c = staircase_from_steps([1, 2])
    levels = [c.gen(f"x{k}").fl for k in range(5)]
    arrows = {("x1", "x0"), ("x1", "x2"), ("x3", "x2"), ("x3", "x4")}
    ok = levels == [(0, 3), (1, 3), (1, 1), (3, 1), (3, 0)] and set(c.arrows) == arrows
    return ok, f"T(3,4) levels {levels}"


def criterion_3() -> tuple[bool, str]:
    golden = run_check("box", {"a": [1, 3], "b": [2]})
    note = golden.outcomes[0].note
    ok = golden.status == "pass" and note == "core [1,3,2], 2 box summands"
    grid_ok, text = _checks(("box", {"len_a": 2, "len_b": 1, "max_entry": 4}))
    return ok and grid_ok, f"golden {note}; {text}"


CRITERIA = {
    1: (5, lambda: _checks(("cable-poly", {"p_max": 5, "m_max": 4}))),
    2: (1, criterion_2),
    3: (30, criterion_3),
    4: (120, lambda: _checks(("polygon", {"a_max": 2, "p_min": 1, "p_max": 2, "q_max": 2, "c_max": 2}))),
    5: (180, lambda: _checks(
        ("order-i", {"samples": 40, "max_len": 3, "max_entry": 4, "n_max": 3, "seed": 0}),
        ("order-j", {"a_max": 2, "p_max": 1, "q_max": 2, "c_max": 2, "r_max": 3}),
    )),
    6: (10, lambda: _checks(("cable-stairs", {"p_max": 4, "m_max": 3}))),
    7: (300, lambda: _checks(("kij-classes", {"i_max": 2, "j_range": (-1, 1)}))),
    8: (600, lambda: _checks(("theorem-order", {"i_max": 2, "j_range": (-1, 1), "max_n": 3}))),
    9: (120, lambda: _checks(("properties", {"cases": 200, "seed": 0}))),
}


def evaluate(n: int) -> tuple[bool, str]:
    budget, fn = CRITERIA[n]
    start = time.perf_counter()
    ok, text = fn()
    seconds = time.perf_counter() - start
    in_time = seconds < budget
    if not in_time:
        text += " [over time budget]"
    return ok and in_time, _line(n, ok and in_time, text, seconds, budget)


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, request):
    ok, line = evaluate(n)
    _emit(request, line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(n) for n in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
