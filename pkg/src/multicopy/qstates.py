"""Qubit multi-copy discrimination: ensembles, Gram matrices, PGM, bounds,
and the double-trine strategy ladder.

The spectral route goes through the k-copy Gram matrix
G^(k)_ij = (1/n) <phi_i|phi_j>^k, which shares its nonzero eigenvalues with
the average state rho^(k); for geometrically uniform ensembles the PGM
success probability is sum_i (sqrt(G))_ii^2.  Adaptive one-bit strategies
for two copies are represented explicitly and evaluated by summing over
outcome pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from . import numerics
from .lp import LinearProgram, solve_lp


@dataclass(frozen=True)
class PureEnsemble:
    """Equiprobable pure states as rows of a complex array."""

    states: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.states, dtype=complex)
        norms = np.linalg.norm(s, axis=1)
        if np.max(np.abs(norms - 1.0)) > 1e-12:
            raise ValueError("ensemble states must be unit vectors")
        object.__setattr__(self, "states", s)

    @property
    def n(self) -> int:
        return self.states.shape[0]

    def density(self, i: int) -> np.ndarray:
        v = self.states[i]
        return np.outer(v, v.conj())


def cgu_ensemble(n: int) -> PureEnsemble:
    """Cyclic ensemble |psi_i> = cos(pi i/n)|0> + sin(pi i/n)|1>, i = 1..n."""
    if n < 2:
        raise ValueError("n must be >= 2")
    angles = np.pi * np.arange(1, n + 1) / n
    return PureEnsemble(np.stack([np.cos(angles), np.sin(angles)], axis=1))


def trine() -> PureEnsemble:
    """Three real states at mutual Bloch angle 120 degrees; inner products
    (+1/2, +1/2, -1/2)."""
    s3 = math.sqrt(3.0) / 2.0
    return PureEnsemble(np.array([[1.0, 0.0], [0.5, s3], [0.5, -s3]]))


def tetrahedron() -> PureEnsemble:
    """Four states forming a tetrahedron on the Bloch sphere:
    |<psi_i|psi_j>|^2 = 1/3 for all i != j."""
    a = 1.0 / math.sqrt(3.0)
    b = math.sqrt(2.0 / 3.0)
    w = np.exp(2j * np.pi / 3.0)
    return PureEnsemble(
        np.array(
            [
                [1.0, 0.0],
                [a, b],
                [a, b * w],
                [a, b * w**2],
            ]
        )
    )


@dataclass(frozen=True)
class GramMatrix:
    n: int
    k: int
    entries: np.ndarray


def gram(e: PureEnsemble, k: int) -> GramMatrix:
    """G^(k)_ij = (1/n) <phi_i|phi_j>^k from the actual complex inner
    products (signs and phases preserved)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    inner = e.states.conj() @ e.states.T
    return GramMatrix(n=e.n, k=k, entries=inner**k / e.n)


def gram_success(e: PureEnsemble, k: int) -> float:
    """PGM success probability via the Gram matrix: sum_i (sqrt(G))_ii^2.

    Meaningful (equal to the PGM value and optimal) for geometrically
    uniform ensembles; callers are responsible for that restriction.
    """
    root = numerics.sqrtm_psd(gram(e, k).entries)
    return float(np.sum(np.real(np.diag(root)) ** 2))


@dataclass(frozen=True)
class Povm:
    """Finite measurement: PSD effects summing to the identity."""

    effects: tuple
    labels: tuple = ()

    def validate(self, tol: float = 1e-9, psd_tol: float = 1e-10):
        total = sum(self.effects)
        dim = self.effects[0].shape[0]
        if np.max(np.abs(total - np.eye(dim))) > tol:
            raise ValueError("effects do not sum to the identity")
        for eff in self.effects:
            vals = np.linalg.eigvalsh(numerics.as_hermitian(eff, tol=1e-9))
            if vals[0] < -psd_tol:
                raise ValueError(f"effect eigenvalue {vals[0]:.3e} below zero")


def average_state(e: PureEnsemble, k: int) -> np.ndarray:
    """rho^(k) = (1/n) sum_i rho_i^{tensor k}."""
    if k < 1:
        raise ValueError("k must be >= 1")
    dim = e.states.shape[1] ** k
    out = np.zeros((dim, dim), dtype=complex)
    for i in range(e.n):
        out += numerics.tensor_power(e.density(i), k)
    return out / e.n


def pgm(rhos, k: int) -> Povm:
    """Pretty good measurement for k copies of the given density matrices.

    Effects live on the support of rho^(k); the orthogonal-complement mass
    is returned as an explicit extra "inconclusive" effect so the POVM sums
    to the identity exactly.
    """
    n = len(rhos)
    powers = [numerics.tensor_power(np.asarray(r, dtype=complex), k) for r in rhos]
    avg = sum(powers) / n
    root_inv = numerics.sqrtm_psd(numerics.pinv_psd(avg))
    effects = [root_inv @ (p / n) @ root_inv for p in powers]
    labels = tuple(str(i + 1) for i in range(n))
    remainder = np.eye(avg.shape[0]) - sum(effects)
    if np.max(np.abs(remainder)) > 1e-10:
        effects.append(remainder)
        labels = labels + ("inconclusive",)
    else:
        # absorb roundoff so the POVM sums to the identity exactly
        effects[-1] = effects[-1] + remainder
    return Povm(effects=tuple(numerics.as_hermitian(m, tol=1e-9) for m in effects), labels=labels)


def pgm_success(e: PureEnsemble, k: int) -> float:
    """(1/n) sum_i tr(rho_i^{tensor k} M_i) for the PGM effects."""
    if 2**k > 128:
        raise ValueError("k too large for the explicit tensor-power route")
    rhos = [e.density(i) for i in range(e.n)]
    povm = pgm(rhos, k)
    total = 0.0
    for i in range(e.n):
        total += float(np.real(np.trace(numerics.tensor_power(rhos[i], k) @ povm.effects[i])))
    return total / e.n


def trine_closed_form(k: int) -> float:
    """Closed-form trine value (5 + 2^{1-k} + 4 sqrt(1+2^-k) sqrt(2^-k (2^k - 2)))/9.

    Stated for the trine with all Gram off-diagonals -2^{-k}; for even k the
    actual trine inner products (+1/2, +1/2, -1/2) give all-positive Gram
    entries and the eigenvalue-based gram_success deviates from this formula
    (0.96248 vs 0.9714 at k=2).  Both values are exposed; see the README.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    t = 2.0**-k
    return (5.0 + 2.0 * t + 4.0 * math.sqrt(1.0 + t) * math.sqrt(t * (2.0**k - 2.0))) / 9.0


def pure_upper_bound(n: int, k: int) -> float:
    """Symmetric-subspace bound min(1, (k+1)/n) for n pure qubit states."""
    if n < 1 or k < 1:
        raise ValueError("n and k must be >= 1")
    return min(1.0, (k + 1) / n)


def h_exact(k: int) -> Fraction:
    """Exact h(k) = 4^k / C(2k, k)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return Fraction(4**k, comb(2 * k, k))


def gu_lower_bound_h(k: int) -> float:
    """Lower bound h(k) on f(k) = n * P_GU(n, k)."""
    return float(h_exact(k))


def fidelity_lower_bound(e: PureEnsemble, k: int) -> float:
    """1 - (1/n) sum_{i != j} |<psi_i|psi_j>|^k (pure-state fidelity route)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    overlap = np.abs(e.states.conj() @ e.states.T)
    total = np.sum(overlap**k) - e.n  # remove the diagonal
    return 1.0 - total / e.n


def basic_decoding_bound(n: int, d: int) -> float:
    """d/n capped at one: no measurement gives more than d outcomes' worth."""
    if n < 1 or d < 1:
        raise ValueError("n and d must be >= 1")
    return min(1.0, d / n)


def helstrom(rho1, rho2, q1: float, q2: float) -> float:
    """Optimal two-state success 1/2 (1 + ||q1 rho1 - q2 rho2||_1)."""
    if q1 < 0 or q2 < 0 or abs(q1 + q2 - 1.0) > 1e-12:
        raise ValueError("priors must be nonnegative and sum to one")
    return 0.5 * (1.0 + numerics.trace_norm(q1 * np.asarray(rho1) - q2 * np.asarray(rho2)))


def helstrom_povm(rho1, rho2, q1: float, q2: float) -> Povm:
    """Projective Helstrom measurement: outcome 0 is the projector onto the
    nonnegative part of q1 rho1 - q2 rho2."""
    spec = numerics.eigh(q1 * np.asarray(rho1) - q2 * np.asarray(rho2))
    v = spec.eigenvectors
    pos = (v * (spec.eigenvalues >= 0)) @ v.conj().T
    dim = pos.shape[0]
    return Povm(effects=(pos, np.eye(dim) - pos), labels=("0", "1"))


# ---------------------------------------------------------------------------
# discretized min-error solver (rebit plane)

def _rank1(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c * c, c * s], [c * s, s * s]])


def min_error_qubit(states, priors, resolution: int = 720):
    """Minimum-error discrimination of real-amplitude qubit states by LP.

    Effects are restricted to mixtures of rank-1 projectors |theta><theta|
    with theta on a uniform grid of `resolution` angles in [0, pi), plus a
    scaled identity per outcome; POVM normalization enters as three equality
    constraints.  Returns (value, Povm) — a feasible measurement, so the
    value is a certified lower bound with O(resolution^-2) discretization
    error.
    """
    n = len(states)
    rhos = []
    for r in states:
        r = np.asarray(r, dtype=complex)
        if np.max(np.abs(r.imag)) > 1e-12:
            raise ValueError("states must be real in the rebit plane")
        rhos.append(r.real)
    q = np.asarray(priors, dtype=float)
    if abs(q.sum() - 1.0) > 1e-9 or q.min() < -1e-15:
        raise ValueError("priors must form a probability vector")
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    thetas = np.pi * np.arange(resolution) / resolution
    cos2 = np.cos(thetas) ** 2
    sin2 = np.sin(thetas) ** 2
    cs = np.cos(thetas) * np.sin(thetas)
    # variables: w[i, t] (n * resolution) then identity weights c[i] (n)
    nvars = n * resolution + n
    c_obj = np.zeros(nvars)
    for i in range(n):
        vals = cos2 * rhos[i][0, 0] + 2.0 * cs * rhos[i][0, 1] + sin2 * rhos[i][1, 1]
        c_obj[i * resolution : (i + 1) * resolution] = q[i] * vals
        c_obj[n * resolution + i] = q[i]  # tr rho_i = 1
    a_eq = np.zeros((3, nvars))
    for i in range(n):
        a_eq[0, i * resolution : (i + 1) * resolution] = cos2
        a_eq[1, i * resolution : (i + 1) * resolution] = cs
        a_eq[2, i * resolution : (i + 1) * resolution] = sin2
        a_eq[0, n * resolution + i] = 1.0
        a_eq[2, n * resolution + i] = 1.0
    b_eq = np.array([1.0, 0.0, 1.0])
    sol = solve_lp(
        LinearProgram(c=c_obj, a_eq=a_eq, b_eq=b_eq, bounds=[(0.0, None)] * nvars)
    )
    if sol.status != "optimal":
        raise RuntimeError(f"min-error LP unexpectedly {sol.status}")
    effects = []
    for i in range(n):
        w = sol.x[i * resolution : (i + 1) * resolution]
        eff = np.zeros((2, 2))
        eff[0, 0] = float(w @ cos2)
        eff[0, 1] = eff[1, 0] = float(w @ cs)
        eff[1, 1] = float(w @ sin2)
        eff += sol.x[n * resolution + i] * np.eye(2)
        effects.append(eff)
    return float(sol.value), Povm(effects=tuple(effects), labels=tuple(str(i + 1) for i in range(n)))


def min_error_qubit_gap(states, priors, resolution: int = 720) -> float:
    """Duality-gap estimate for min_error_qubit at the same grid.

    Solves min tr Y over symmetric Y with <theta|Y - q_i rho_i|theta> >= 0
    on the grid (and tr Y >= q_i); returns certificate minus primal value.
    PSD is enforced on the grid only, so this certifies the discretized
    program, not the continuum optimum.
    """
    value, _ = min_error_qubit(states, priors, resolution)
    n = len(states)
    rhos = [np.real(np.asarray(r)) for r in states]
    q = np.asarray(priors, dtype=float)
    thetas = np.pi * np.arange(resolution) / resolution
    cos2 = np.cos(thetas) ** 2
    sin2 = np.sin(thetas) ** 2
    cs = np.cos(thetas) * np.sin(thetas)
    # variables y11, y12, y22; maximize -(y11 + y22) == minimize trace
    rows, rhs = [], []
    for i in range(n):
        vals = cos2 * rhos[i][0, 0] + 2.0 * cs * rhos[i][0, 1] + sin2 * rhos[i][1, 1]
        for t in range(resolution):
            rows.append([-cos2[t], -2.0 * cs[t], -sin2[t]])
            rhs.append(-q[i] * vals[t])
        rows.append([-1.0, 0.0, -1.0])
        rhs.append(-q[i])
    sol = solve_lp(
        LinearProgram(
            c=np.array([-1.0, 0.0, -1.0]),
            a_ub=np.array(rows),
            b_ub=np.array(rhs),
            bounds=[(None, None)] * 3,
        )
    )
    if sol.status != "optimal":
        raise RuntimeError(f"certificate LP unexpectedly {sol.status}")
    return -float(sol.value) - value


# ---------------------------------------------------------------------------
# double-trine strategies

@dataclass(frozen=True)
class AdaptiveQubitStrategy:
    """Alice measures copy 1; Bob's POVM depends on her outcome; the decoder
    maps (alice outcome, bob outcome) to a 0-based state label."""

    alice_povm: Povm
    bob_povms: dict
    decoder: dict


def evaluate_adaptive(strategy: AdaptiveQubitStrategy, states, priors) -> float:
    """Success probability of a two-copy adaptive strategy on product states."""
    rhos = [np.asarray(r, dtype=complex) for r in states]
    q = np.asarray(priors, dtype=float)
    total = 0.0
    for a, alice_eff in enumerate(strategy.alice_povm.effects):
        bob = strategy.bob_povms[a]
        for b, bob_eff in enumerate(bob.effects):
            i = strategy.decoder[(a, b)]
            total += q[i] * float(
                np.real(np.trace(alice_eff @ rhos[i])) * np.real(np.trace(bob_eff @ rhos[i]))
            )
    return total


def double_trine_adaptive():
    """Exclusion-first adaptive strategy: Alice antidistinguishes with
    M_i = (2/3)|psi_i-perp><psi_i-perp|, Bob Helstroms the surviving pair.

    Value 1/2 + sqrt(3)/4, optimal for one-way LOCC.
    """
    e = trine()
    perps = []
    for v in e.states:
        perps.append(np.array([-v[1], v[0]]))
    alice = Povm(
        effects=tuple((2.0 / 3.0) * np.outer(p, p.conj()) for p in perps),
        labels=("not1", "not2", "not3"),
    )
    bob_povms, decoder = {}, {}
    for a in range(3):
        j1, j2 = [j for j in range(3) if j != a]
        bob_povms[a] = helstrom_povm(e.density(j1), e.density(j2), 0.5, 0.5)
        decoder[(a, 0)] = j1
        decoder[(a, 1)] = j2
    strat = AdaptiveQubitStrategy(alice_povm=alice, bob_povms=bob_povms, decoder=decoder)
    value = evaluate_adaptive(strat, [e.density(i) for i in range(3)], [1 / 3] * 3)
    return value, strat


def sigma_x_updated_priors():
    """Posterior trine priors after Alice's sigma_x outcome, and the outcome
    probabilities p(+/-) = (1/2, 1/2)."""
    e = trine()
    plus = np.array([1.0, 1.0]) / math.sqrt(2.0)
    minus = np.array([1.0, -1.0]) / math.sqrt(2.0)
    priors = []
    pa = []
    for v in (plus, minus):
        weights = np.array([abs(np.vdot(v, e.states[i])) ** 2 / 3.0 for i in range(3)])
        pa.append(weights.sum())
        priors.append(weights / weights.sum())
    return np.array(pa), priors


def double_trine_ad1(resolution: int = 720):
    """One-bit adaptive strategy: Alice measures sigma_x, Bob plays the
    min-error measurement for the updated priors; value about 0.8976."""
    e = trine()
    pa, priors = sigma_x_updated_priors()
    plus = np.array([1.0, 1.0]) / math.sqrt(2.0)
    minus = np.array([1.0, -1.0]) / math.sqrt(2.0)
    alice = Povm(
        effects=(np.outer(plus, plus), np.outer(minus, minus)), labels=("+", "-")
    )
    rhos = [e.density(i) for i in range(3)]
    bob_povms, decoder = {}, {}
    for a in range(2):
        _, povm = min_error_qubit(rhos, priors[a], resolution=resolution)
        bob_povms[a] = povm
        for b in range(3):
            decoder[(a, b)] = b
    strat = AdaptiveQubitStrategy(alice_povm=alice, bob_povms=bob_povms, decoder=decoder)
    value = evaluate_adaptive(strat, rhos, [1 / 3] * 3)
    return value, strat
