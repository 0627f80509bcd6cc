"""LP layer: generic solver behaviour and the SEP/GLOBAL polygon programs."""

import itertools
import math

import numpy as np
import pytest

from multicopy import gpt, lp


def test_solve_lp_box():
    sol = lp.solve_lp(lp.LinearProgram(c=np.array([1.0]), bounds=[(0.0, 1.0)]))
    assert sol.status == "optimal"
    assert sol.value == pytest.approx(1.0)


def test_solve_lp_simplex_face():
    p = lp.LinearProgram(
        c=np.array([1.0, 1.0]),
        a_ub=np.array([[1.0, 1.0]]),
        b_ub=np.array([1.0]),
        bounds=[(0.0, None)] * 2,
    )
    sol = lp.solve_lp(p)
    assert sol.value == pytest.approx(1.0)
    assert sol.max_violation <= 1e-9


def test_solve_lp_infeasible_and_unbounded():
    infeasible = lp.LinearProgram(
        c=np.array([1.0]),
        a_eq=np.array([[1.0]]),
        b_eq=np.array([2.0]),
        bounds=[(0.0, 1.0)],
    )
    assert lp.solve_lp(infeasible).status == "infeasible"
    unbounded = lp.LinearProgram(c=np.array([1.0]), bounds=[(0.0, None)])
    assert lp.solve_lp(unbounded).status == "unbounded"


def test_sep_square_triple_perfect():
    sol = lp.solve_lp(lp.sep_program(gpt.polygon(4), (1, 2, 3)))
    assert sol.status == "optimal"
    assert sol.value >= 1.0 - 1e-6
    assert sol.max_violation <= 1e-8


def test_sep_hexagon_triple_perfect():
    sol = lp.solve_lp(lp.sep_program(gpt.polygon(6), (2, 4, 6)))
    assert sol.value >= 1.0 - 1e-6
    # cross-module consistency: the AD1 tree reaches the same perfect value
    t, states, tree = gpt.hexagon_ad1_strategy()
    assert gpt.evaluate_strategy(t, states, tree).value >= 1.0 - 1e-12


@pytest.mark.parametrize("m,perfect", [(4, True), (5, True), (6, True), (7, True), (8, False)])
def test_sep_sweep(m, perfect):
    value, subset, table = lp.optimize_over_subsets(gpt.polygon(m), 3, "SEP")
    if perfect:
        assert value >= 1.0 - 1e-6
    else:
        assert value < 1.0 - 1e-6
    assert subset is not None
    assert all(row[4] == "optimal" for row in table)


def test_sep_m8_regression_value():
    # derived regression baseline from the first build-time solve
    value, _, _ = lp.optimize_over_subsets(gpt.polygon(8), 3, "SEP")
    assert value == pytest.approx(0.979779942740, abs=1e-9)


def test_global_m8_perfect():
    value, _, _ = lp.optimize_over_subsets(gpt.polygon(8), 3, "GLOBAL")
    assert value >= 1.0 - 1e-8


def test_sep_below_global_per_subset():
    for m in range(4, 9):
        t = gpt.polygon(m)
        for subset in lp.canonical_subsets(m, 3):
            sep = lp.solve_lp(lp.sep_program(t, subset))
            glob = lp.solve_lp(lp.global_program(t, subset))
            assert sep.value <= glob.value + 1e-9


def test_global_solution_positivity():
    t = gpt.polygon(8)
    subset = (1, 3, 6)
    prog = lp.global_program(t, subset)
    sol = lp.solve_lp(prog)
    assert sol.status == "optimal"
    # all product-state positivity rows satisfied
    assert np.max(prog.a_ub @ sol.x - prog.b_ub) <= 1e-8


def test_sep_solution_box_and_normalization():
    t = gpt.polygon(6)
    prog = lp.sep_program(t, (2, 4, 6))
    sol = lp.solve_lp(prog)
    assert sol.x.min() >= -1e-10
    assert sol.x.max() <= 1.0 + 1e-10
    assert np.max(np.abs(prog.a_eq @ sol.x - prog.b_eq)) <= 1e-8


def test_rotation_invariance():
    t = gpt.polygon(8)
    base = lp.solve_lp(lp.sep_program(t, (1, 3, 6))).value
    for shift in (1, 3, 5):
        rotated = tuple(sorted((i - 1 + shift) % 8 + 1 for i in (1, 3, 6)))
        assert lp.solve_lp(lp.sep_program(t, rotated)).value == pytest.approx(base, abs=1e-9)
    reflected = tuple(sorted((8 - i) % 8 + 1 for i in (1, 3, 6)))
    assert lp.solve_lp(lp.sep_program(t, reflected)).value == pytest.approx(base, abs=1e-9)


def test_canonical_subsets_cover_orbits():
    reps = lp.canonical_subsets(6, 3)
    # C(6,3) = 20 subsets fall into 3 dihedral orbits (6 + 12 + 2 elements)
    assert len(reps) == 3
    total = set()
    for subset in reps:
        for refl in (False, True):
            base = [(6 - i) % 6 for i in subset] if refl else [i % 6 for i in subset]
            for shift in range(6):
                total.add(tuple(sorted((i + shift) % 6 for i in base)))
    assert len(total) == 20


def test_subset_validation():
    t = gpt.polygon(6)
    with pytest.raises(ValueError):
        lp.sep_program(t, (1, 1, 2))
    with pytest.raises(ValueError):
        lp.sep_program(t, (0, 1, 2))
    with pytest.raises(ValueError):
        lp.optimize_over_subsets(t, 3, "LOCC")
