"""Linear programming layer: a generic dense LP solver plus the separable
and global discrimination programs over polygon product effects.

A two-copy measurement outcome is expanded as M_x = sum_ij a^x_ij g_i (x) g_j
over the extreme-effect generating set of the polygon; SEP constrains the
coefficients to [0, 1], GLOBAL only requires M_x to be nonnegative on every
product of pure states.  Normalization (sum of outcomes equals the product
unit) is imposed coordinatewise in the 9-dimensional product functional
space.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog

#: Values at or above 1 - PERFECT_TOL count as perfect discrimination.
PERFECT_TOL = 1e-6


@dataclass
class LinearProgram:
    """max c.x  s.t.  a_eq x = b_eq,  a_ub x <= b_ub,  bounds per variable."""

    c: np.ndarray
    a_eq: np.ndarray | None = None
    b_eq: np.ndarray | None = None
    a_ub: np.ndarray | None = None
    b_ub: np.ndarray | None = None
    bounds: list = field(default_factory=list)  # (lo, hi) per variable; None = free


@dataclass
class LpSolution:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: float | None
    x: np.ndarray | None
    max_violation: float


def solve_lp(p: LinearProgram) -> LpSolution:
    """Solve a maximization LP; never raises on infeasible/unbounded input."""
    c = np.asarray(p.c, dtype=float)
    bounds = p.bounds if p.bounds else [(0.0, None)] * c.size
    res = linprog(
        -c,
        A_eq=p.a_eq,
        b_eq=p.b_eq,
        A_ub=p.a_ub,
        b_ub=p.b_ub,
        bounds=bounds,
        method="highs",
    )
    if res.status == 2:
        return LpSolution(status="infeasible", value=None, x=None, max_violation=np.inf)
    if res.status == 3:
        return LpSolution(status="unbounded", value=None, x=None, max_violation=np.inf)
    if not res.success:
        return LpSolution(status="infeasible", value=None, x=None, max_violation=np.inf)
    x = np.asarray(res.x)
    viol = 0.0
    if p.a_eq is not None:
        viol = max(viol, float(np.max(np.abs(np.asarray(p.a_eq) @ x - np.asarray(p.b_eq)))))
    if p.a_ub is not None:
        viol = max(viol, float(np.max(np.asarray(p.a_ub) @ x - np.asarray(p.b_ub), initial=0.0)))
    for xi, (lo, hi) in zip(x, bounds):
        if lo is not None:
            viol = max(viol, lo - xi)
        if hi is not None:
            viol = max(viol, xi - hi)
    return LpSolution(status="optimal", value=float(c @ x), x=x, max_violation=viol)


def _generators(theory) -> np.ndarray:
    """Extreme-effect generating set g_i as rows: e_i (even m) or f_i (odd m)."""
    if theory.m % 2 == 0:
        return np.array([vec for label, vec in theory.extreme_effects])
    return np.array(
        [vec for label, vec in theory.extreme_effects if not label.startswith("~")]
    )


def _normalization_rows(gens: np.ndarray, unit: np.ndarray, n: int):
    """Nine equality rows expressing sum_x M_x = unit (x) unit."""
    m = gens.shape[0]
    nvars = n * m * m
    a_eq = np.zeros((9, nvars))
    b_eq = np.zeros(9)
    row = 0
    for p_ in range(3):
        for q in range(3):
            coeffs = np.outer(gens[:, p_], gens[:, q]).ravel()
            for x in range(n):
                a_eq[row, x * m * m : (x + 1) * m * m] = coeffs
            b_eq[row] = unit[p_] * unit[q]
            row += 1
    return a_eq, b_eq


def _objective(theory, gens: np.ndarray, subset) -> np.ndarray:
    n = len(subset)
    m = gens.shape[0]
    c = np.zeros(n * m * m)
    for x, idx in enumerate(subset):
        s = theory.states[idx - 1]
        gs = gens @ s
        c[x * m * m : (x + 1) * m * m] = np.outer(gs, gs).ravel() / n
    return c


def sep_program(theory, subset) -> LinearProgram:
    """Separable-measurement discrimination LP for the given pure-state subset."""
    _check_subset(theory, subset)
    gens = _generators(theory)
    n = len(subset)
    a_eq, b_eq = _normalization_rows(gens, theory.unit, n)
    c = _objective(theory, gens, subset)
    return LinearProgram(c=c, a_eq=a_eq, b_eq=b_eq, bounds=[(0.0, 1.0)] * c.size)


def global_program(theory, subset) -> LinearProgram:
    """Global-measurement LP: coefficients free in sign, effects nonnegative
    on every product of pure states (minimal tensor product duality)."""
    _check_subset(theory, subset)
    gens = _generators(theory)
    n = len(subset)
    m_g = gens.shape[0]
    m = theory.m
    a_eq, b_eq = _normalization_rows(gens, theory.unit, n)
    c = _objective(theory, gens, subset)
    # -M_x(s_a (x) s_b) <= 0 for all outcomes x and pure-state pairs (a, b)
    gvals = gens @ theory.states.T  # (m_g, m): g_i(s_a)
    a_ub = np.zeros((n * m * m, n * m_g * m_g))
    row = 0
    for x in range(n):
        for a in range(m):
            for b in range(m):
                a_ub[row, x * m_g * m_g : (x + 1) * m_g * m_g] = -np.outer(
                    gvals[:, a], gvals[:, b]
                ).ravel()
                row += 1
    return LinearProgram(
        c=c,
        a_eq=a_eq,
        b_eq=b_eq,
        a_ub=a_ub,
        b_ub=np.zeros(n * m * m),
        bounds=[(None, None)] * c.size,
    )


def _check_subset(theory, subset):
    if len(set(subset)) != len(subset):
        raise ValueError("subset indices must be distinct")
    if not all(1 <= i <= theory.m for i in subset):
        raise ValueError("subset indices must lie in 1..m")


def canonical_subsets(m: int, n: int):
    """One representative per orbit of n-subsets of [m] under the dihedral
    symmetry of the polygon (rotations and reflections)."""
    seen = set()
    reps = []
    for subset in itertools.combinations(range(1, m + 1), n):
        orbit = set()
        for refl in (False, True):
            base = tuple((m - i) % m for i in subset) if refl else tuple(i % m for i in subset)
            for shift in range(m):
                orbit.add(tuple(sorted((i + shift) % m for i in base)))
        key = min(orbit)
        if key not in seen:
            seen.add(key)
            reps.append(subset)
    return reps


def optimize_over_subsets(theory, n: int, kind: str, reduce_symmetry: bool = True):
    """Sweep all n-subsets of pure states (up to dihedral symmetry) with the
    SEP or GLOBAL program.  Returns (best value, best subset, table rows);
    rows are (m, subset, kind, value, status)."""
    kind = kind.upper()
    if kind not in ("SEP", "GLOBAL"):
        raise ValueError("kind must be SEP or GLOBAL")
    build = sep_program if kind == "SEP" else global_program
    subsets = (
        canonical_subsets(theory.m, n)
        if reduce_symmetry
        else list(itertools.combinations(range(1, theory.m + 1), n))
    )
    best_value, best_subset = -1.0, None
    table = []
    for subset in subsets:
        sol = solve_lp(build(theory, subset))
        value = sol.value if sol.status == "optimal" else float("nan")
        table.append((theory.m, subset, kind, value, sol.status))
        if sol.status == "optimal" and value > best_value:
            best_value, best_subset = value, subset
    return best_value, best_subset, table
