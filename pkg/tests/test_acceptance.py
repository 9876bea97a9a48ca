"""Acceptance gate: every numbered verification criterion, one test each,
with its stated time budget.  Run with -s to see the per-criterion lines.

Budgets follow the stated per-case bounds (multiplied out where a criterion
is a grid) or the stated totals; all are generous compared to actual runtimes
on commodity hardware.
"""

import time

from liecoh.invalg import canonical_json
from liecoh.verifygrid import CRITERIA, run_grid

_FUNCS = dict(CRITERIA)


def _run(name: str, budget: float) -> dict:
    t0 = time.perf_counter()
    rep = _FUNCS[name]()
    elapsed = time.perf_counter() - t0
    status = "PASS" if rep["pass"] else "FAIL"
    print(f"{name} {status} ({elapsed:.2f}s) {rep['label']}")
    assert rep["pass"], rep
    assert elapsed < budget, f"{name} took {elapsed:.1f}s (budget {budget}s)"
    return rep


def test_c01_rank_one_landmarks():
    rep = _run("c01", 7.0)
    assert len(rep["details"]["cases"]) == 7


def test_c02_rank_one_nonnilpotence():
    rep = _run("c02", 4.0)
    assert all(c["witness"].startswith("y0^") or c["witness"] == "y0"
               for c in rep["details"]["cases"])


def test_c03_squares_of_units_landmarks():
    _run("c03", 3.0)


def test_c04_digit_sum_bound():
    rep = _run("c04", 5.0)
    assert len(rep["details"]["cases"]) == 15


def test_c05_graded_vanishing():
    rep = _run("c05", 60.0)
    assert len(rep["details"]["cases"]) == 14


def test_c06_detection_kernels():
    _run("c06", 60.0)


def test_c07_essential_kernels():
    rep = _run("c07", 120.0)
    small = rep["details"]["cases"][-1]
    assert small["n"] == 3 and small["discrepancy"] is True
    assert small["basis"]


def test_c08_oracle_equivalence():
    rep = _run("c08", 60.0)
    assert rep["details"]["mismatches"] == 0
    assert rep["details"]["random_specs"] == 100


def test_c09_root_system_table():
    rep = _run("c09", 5.0)
    assert len(rep["details"]["cases"]) == 18


def test_c10_divisibility_and_index():
    _run("c10", 5.0)


def test_c11_char2_bounds():
    _run("c11", 60.0)


def test_c12_matrix_checks():
    rep = _run("c12", 30.0)
    assert rep["details"]["exponent_3_2_1"]["witness"] == \
        [[1, 1, 0], [0, 1, 1], [0, 0, 1]]


def test_c13_theorem_reporters():
    _run("c13", 10.0)


def test_c14_chern_coefficient():
    _run("c14", 1.0)


def test_c15_determinism():
    t0 = time.perf_counter()
    first = canonical_json(run_grid())
    second = canonical_json(run_grid())
    elapsed = time.perf_counter() - t0
    ok = first == second
    print(f"c15 {'PASS' if ok else 'FAIL'} ({elapsed:.2f}s) "
          "byte-identical verification reports")
    assert ok
