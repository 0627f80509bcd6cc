"""Polygon state spaces and local measurement strategies.

States and effects live in R^3; an effect acts on a state by the standard
dot product, and the unit effect (0, 0, 1) evaluates to 1 on every state.
Effect-space membership (convex hull of zero, unit, and the extreme
effects) is certified by a feasibility LP, which uniformly covers even and
odd polygons as well as the degenerate classical-bit adapter.

Index arithmetic is 1-based, matching the usual polygon vertex labelling.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .lp import PERFECT_TOL, LinearProgram, solve_lp

MEMBERSHIP_TOL = 1e-9


@dataclass(frozen=True)
class PolygonTheory:
    """A GPT given extensionally: pure states, extreme effects, unit."""

    m: int
    states: np.ndarray  # (m, 3), row i-1 is the pure state s_i
    extreme_effects: tuple  # of (label, 3-vector)
    unit: np.ndarray
    name: str = "polygon"

    def state(self, i: int) -> np.ndarray:
        return self.states[i - 1]

    def effect(self, label: str) -> np.ndarray:
        for lab, vec in self.extreme_effects:
            if lab == label:
                return vec
        raise KeyError(label)

    def mixed(self, weights) -> np.ndarray:
        """Convex combination of the pure states; weights indexed like states."""
        w = np.asarray(weights, dtype=float)
        if w.min() < 0 or abs(w.sum() - 1.0) > 1e-12:
            raise ValueError("weights must be a probability vector")
        return w @ self.states


def polygon(m: int) -> PolygonTheory:
    """Regular polygon theory with m vertices at height 1 in R^3."""
    if m < 3:
        raise ValueError("m must be >= 3")
    r = math.sqrt(1.0 / math.cos(math.pi / m))
    states = np.array(
        [
            [r * math.cos(2 * math.pi * i / m), r * math.sin(2 * math.pi * i / m), 1.0]
            for i in range(1, m + 1)
        ]
    )
    unit = np.array([0.0, 0.0, 1.0])
    effects = []
    if m % 2 == 0:
        for i in range(1, m + 1):
            ang = (2 * i - 1) * math.pi / m
            effects.append(
                (f"e{i}", 0.5 * np.array([r * math.cos(ang), r * math.sin(ang), 1.0]))
            )
    else:
        for i in range(1, m + 1):
            ang = 2 * i * math.pi / m
            effects.append(
                (
                    f"f{i}",
                    np.array([r * math.cos(ang), r * math.sin(ang), 1.0]) / (1.0 + r * r),
                )
            )
        for i in range(1, m + 1):
            effects.append((f"~f{i}", unit - effects[i - 1][1]))
    return PolygonTheory(m=m, states=states, extreme_effects=tuple(effects), unit=unit)


def bit_theory() -> PolygonTheory:
    """Classical bit in the same interface: two pure states on a segment.

    The state with weight p on the first outcome is (2p - 1, 0, 1); the two
    extreme effects read off the outcome probabilities.
    """
    states = np.array([[1.0, 0.0, 1.0], [-1.0, 0.0, 1.0]])
    unit = np.array([0.0, 0.0, 1.0])
    effects = (
        ("b0", np.array([0.5, 0.0, 0.5])),
        ("b1", np.array([-0.5, 0.0, 0.5])),
    )
    return PolygonTheory(m=2, states=states, extreme_effects=effects, unit=unit, name="bit")


def bit_state(p: float) -> np.ndarray:
    return np.array([2.0 * p - 1.0, 0.0, 1.0])


def eval_effect(eff, state) -> float:
    """Outcome probability of an effect on a state, clamped to [0, 1]."""
    v = float(np.dot(eff, state))
    if v < -1e-12 - 1e-9 or v > 1.0 + 1e-12 + 1e-9:
        # caller passed an invalid effect/state pair; keep the raw pairing
        return v
    return min(1.0, max(0.0, v))


def effect_membership(t: PolygonTheory, vec, tol: float = MEMBERSHIP_TOL):
    """Certify vec in conv{0, unit, extreme effects} by feasibility LP.

    Returns the convex weights (zero, unit, *extremes) or None.
    """
    gens = [np.zeros(3), t.unit] + [v for _, v in t.extreme_effects]
    a_eq = np.vstack([np.array(gens).T, np.ones(len(gens))])
    b_eq = np.concatenate([np.asarray(vec, dtype=float), [1.0]])
    sol = solve_lp(
        LinearProgram(c=np.zeros(len(gens)), a_eq=a_eq, b_eq=b_eq, bounds=[(0.0, 1.0)] * len(gens))
    )
    if sol.status != "optimal" or sol.max_violation > tol:
        return None
    return sol.x


@dataclass(frozen=True)
class GptMeasurement:
    """Finite collection of effects summing to the unit."""

    effects: tuple  # of 3-vectors
    labels: tuple = ()

    @property
    def n_outcomes(self) -> int:
        return len(self.effects)


def validate_measurement(t: PolygonTheory, meas: GptMeasurement, tol: float = 1e-10):
    total = np.sum(np.array(meas.effects), axis=0)
    if np.max(np.abs(total - t.unit)) > tol:
        raise ValueError("effects do not sum to the unit effect")
    for eff in meas.effects:
        if effect_membership(t, eff) is None:
            raise ValueError(f"effect {eff} outside the effect space")


def perfectly_distinguishable_pair(t: PolygonTheory, i: int, j: int, tol: float = MEMBERSHIP_TOL):
    """Does an effect exist with e(s_i) = 1 and e(s_j) = 0?

    Returns (flag, certificate effect or None); the certificate is a convex
    combination of zero, unit and the extreme effects found by the LP.
    """
    if i == j:
        raise ValueError("indices must differ")
    gens = [np.zeros(3), t.unit] + [v for _, v in t.extreme_effects]
    gmat = np.array(gens)
    si, sj = t.state(i), t.state(j)
    a_eq = np.vstack([(gmat @ si), (gmat @ sj), np.ones(len(gens))])
    b_eq = np.array([1.0, 0.0, 1.0])
    sol = solve_lp(
        LinearProgram(c=np.zeros(len(gens)), a_eq=a_eq, b_eq=b_eq, bounds=[(0.0, 1.0)] * len(gens))
    )
    if sol.status != "optimal" or sol.max_violation > tol:
        return False, None
    return True, sol.x @ gmat


def pairwise_distinguishable_triples(t: PolygonTheory):
    """All index triples whose three pairs are each perfectly distinguishable."""
    good_pairs = {
        (i, j)
        for i, j in itertools.combinations(range(1, t.m + 1), 2)
        if perfectly_distinguishable_pair(t, i, j)[0]
    }
    return [
        trip
        for trip in itertools.combinations(range(1, t.m + 1), 3)
        if all(p in good_pairs for p in itertools.combinations(trip, 2))
    ]


@dataclass(frozen=True)
class StrategyTree:
    """Adaptive measurement tree: the measurement applied by party
    len(prefix)+1 after earlier parties saw `prefix` is measurements[prefix].

    decoder maps full outcome tuples to 0-based state positions; None means
    maximum-likelihood decoding.
    """

    depth: int
    measurements: dict
    decoder: dict | None = None
    tag: str = "AD"

    def measurement_at(self, prefix: tuple) -> GptMeasurement:
        if prefix in self.measurements:
            return self.measurements[prefix]
        return self.measurements[()]


def fix_tree(meas: GptMeasurement, k: int, decoder=None) -> StrategyTree:
    return StrategyTree(depth=k, measurements={(): meas}, decoder=decoder, tag="FIX")


def nad_tree(per_party, decoder=None) -> StrategyTree:
    """Non-adaptive tree: party l always measures per_party[l-1]."""
    k = len(per_party)
    meas = {(): per_party[0]}
    for prefix_len in range(1, k):
        for prefix in itertools.product(
            *(range(m.n_outcomes) for m in per_party[:prefix_len])
        ):
            meas[prefix] = per_party[prefix_len]
    return StrategyTree(depth=k, measurements=meas, decoder=decoder, tag="NAD")


@dataclass(frozen=True)
class StrategyValue:
    value: float
    per_state: tuple
    tag: str


def _resolve_states(t: PolygonTheory, states):
    out = []
    for s in states:
        if isinstance(s, (int, np.integer)):
            out.append(t.state(int(s)))
        else:
            out.append(np.asarray(s, dtype=float))
    return out


def evaluate_strategy(t: PolygonTheory, states, tree: StrategyTree, validate: bool = False) -> StrategyValue:
    """Average success probability of an adaptive tree on the given states.

    States may be 1-based vertex indices or explicit (possibly mixed) state
    vectors.  With no decoder, each outcome string is decoded to the most
    likely state (ties to the lowest position).
    """
    svecs = _resolve_states(t, states)
    n = len(svecs)
    if validate:
        seen = set()
        for meas in tree.measurements.values():
            if id(meas) not in seen:
                validate_measurement(t, meas)
                seen.add(id(meas))
    per_state = np.zeros(n)

    def walk(prefix, probs):
        if len(prefix) == tree.depth:
            if tree.decoder is not None:
                guess = tree.decoder[prefix]
            else:
                guess = int(np.argmax(probs))
            per_state[guess] += probs[guess]
            return
        meas = tree.measurement_at(prefix)
        for o, eff in enumerate(meas.effects):
            branch = probs * np.array([eval_effect(eff, s) for s in svecs])
            if branch.max() > 0.0:
                walk(prefix + (o,), branch)

    walk((), np.ones(n))
    return StrategyValue(value=float(per_state.mean()), per_state=tuple(per_state), tag=tree.tag)


# ---------------------------------------------------------------------------
# named strategies

def hexagon_fix_strategy():
    """Shared three-outcome measurement on states (s2, s4, s6): value 8/9."""
    t = polygon(6)
    meas = GptMeasurement(
        effects=tuple((2.0 / 3.0) * t.effect(f"e{i}") for i in (2, 4, 6)),
        labels=("e2", "e4", "e6"),
    )
    decoder = {}
    for pattern, guess in (
        (((0, 0), (0, 1), (1, 0)), 0),
        (((1, 1), (1, 2), (2, 1)), 1),
        (((2, 2), (2, 0), (0, 2)), 2),
    ):
        for key in pattern:
            decoder[key] = guess
    tree = StrategyTree(depth=2, measurements={(): meas}, decoder=decoder, tag="FIX")
    return t, (2, 4, 6), tree


def square_nad_strategy():
    """Square: fixed dichotomic measurements e2 then e1 identify all four
    vertices with one bit each."""
    t = polygon(4)
    alice = GptMeasurement(effects=(t.effect("e2"), t.effect("e4")), labels=("e2", "~e2"))
    bob = GptMeasurement(effects=(t.effect("e1"), t.effect("e3")), labels=("e1", "~e1"))
    return t, (1, 2, 3, 4), nad_tree([alice, bob])


def hexagon_ad1_strategy():
    """Hexagon (s2, s4, s6): Alice's e2 bit steers Bob to e3 or e4."""
    t = polygon(6)
    alice = GptMeasurement(effects=(t.effect("e2"), t.effect("e5")), labels=("e2", "~e2"))
    bob0 = GptMeasurement(effects=(t.effect("e3"), t.effect("e6")), labels=("e3", "~e3"))
    bob1 = GptMeasurement(effects=(t.effect("e4"), t.effect("e1")), labels=("e4", "~e4"))
    tree = StrategyTree(
        depth=2, measurements={(): alice, (0,): bob0, (1,): bob1}, decoder=None, tag="AD1"
    )
    return t, (2, 4, 6), tree


# ---------------------------------------------------------------------------
# strategy search (lower bounds only)

def dichotomic_measurements(t: PolygonTheory):
    """{g, unit - g} for every extreme effect g (complements are again in
    the effect space for every polygon and for the bit adapter)."""
    out = []
    seen = set()
    for label, g in t.extreme_effects:
        key = tuple(np.round(np.minimum(g, t.unit - g), 12))
        if key in seen:
            continue
        seen.add(key)
        out.append(GptMeasurement(effects=(g, t.unit - g), labels=(label, f"~{label}")))
    return out


def solved_triple_measurements(t: PolygonTheory, tol: float = 1e-9):
    """Three-outcome measurements with one scaled extreme effect per outcome,
    weights solved exactly from the normalization condition."""
    gens = [v for _, v in t.extreme_effects]
    out = []
    for combo in itertools.combinations(range(len(gens)), 3):
        gmat = np.array([gens[i] for i in combo]).T
        if abs(np.linalg.det(gmat)) < 1e-12:
            continue
        w = np.linalg.solve(gmat, t.unit)
        if w.min() < -tol or w.max() > 1.0 + tol:
            continue
        w = np.clip(w, 0.0, 1.0)
        out.append(
            GptMeasurement(effects=tuple(w[j] * gens[i] for j, i in enumerate(combo)))
        )
    return out


def _ml_value_fixed(p: np.ndarray, k: int) -> float:
    """ML-decoded FIX value from outcome-probability matrix p (outcomes x states)."""
    n = p.shape[1]
    total = 0.0
    for string in itertools.product(range(p.shape[0]), repeat=k):
        probs = np.ones(n)
        for o in string:
            probs = probs * p[o]
        total += probs.max()
    return total / n


def search_fix_strategy(t: PolygonTheory, states, k: int, resolution: int = 200) -> StrategyValue:
    """Best fixed-measurement value found over dichotomic grid mixtures of
    extreme effects and solved three-outcome measurements, with ML decoding.

    Returns a lower bound on the true FIX optimum.
    """
    if k > 3 or len(states) > 4:
        raise ValueError("search limited to k <= 3 and at most 4 states")
    svecs = np.array(_resolve_states(t, states))
    gens = np.array([v for _, v in t.extreme_effects])
    n = len(svecs)
    # dichotomic candidates on the mixing-weight grid, vectorized over candidates
    weights = np.linspace(0.0, 1.0, resolution + 1)
    pairs = list(itertools.combinations(range(len(gens)), 2)) + [
        (i, i) for i in range(len(gens))
    ]
    cand = []
    for a, b in pairs:
        if a == b:
            cand.append(gens[a])
        else:
            cand.extend(w * gens[a] + (1.0 - w) * gens[b] for w in weights)
    cand = np.array(cand)
    p1 = np.clip(cand @ svecs.T, 0.0, 1.0)  # (C, n): prob of the first outcome
    q = np.stack([p1, 1.0 - p1])  # (2, C, n)
    values = np.zeros(p1.shape[0])
    for string in itertools.product(range(2), repeat=k):
        prod = np.ones_like(p1)
        for o in string:
            prod = prod * q[o]
        values += prod.max(axis=1)
    values /= n
    best_idx = int(np.argmax(values))
    best_value = float(values[best_idx])
    best_p = q[:, best_idx, :]
    # three-outcome candidates
    for meas in solved_triple_measurements(t):
        p = np.clip(np.array(meas.effects) @ svecs.T, 0.0, 1.0)
        v = _ml_value_fixed(p, k)
        if v > best_value:
            best_value, best_p = v, p
    per_state = _per_state_fixed(np.asarray(best_p), k)
    return StrategyValue(value=best_value, per_state=tuple(per_state), tag="FIX")


def _per_state_fixed(p: np.ndarray, k: int) -> np.ndarray:
    n = p.shape[1]
    per_state = np.zeros(n)
    for string in itertools.product(range(p.shape[0]), repeat=k):
        probs = np.ones(n)
        for o in string:
            probs = probs * p[o]
        per_state[int(np.argmax(probs))] += probs.max()
    return per_state


def search_nad_strategy(t: PolygonTheory, states, k: int, candidates=None) -> StrategyValue:
    """Best non-adaptive value over per-party choices from a candidate
    measurement list (dichotomic extreme pairs by default)."""
    if candidates is None:
        candidates = dichotomic_measurements(t)
    svecs = _resolve_states(t, states)
    best = StrategyValue(value=-1.0, per_state=(), tag="NAD")
    for choice in itertools.product(candidates, repeat=k):
        val = evaluate_strategy(t, svecs, nad_tree(list(choice)))
        if val.value > best.value:
            best = StrategyValue(value=val.value, per_state=val.per_state, tag="NAD")
    return best


def search_ad_strategy(t: PolygonTheory, states, candidates=None) -> StrategyValue:
    """Best two-party adaptive value with Alice and per-outcome Bob
    measurements drawn from a candidate list (dichotomic pairs by default)."""
    if candidates is None:
        candidates = dichotomic_measurements(t)
    svecs = _resolve_states(t, states)
    best = StrategyValue(value=-1.0, per_state=(), tag="AD")
    for alice in candidates:
        for bobs in itertools.product(candidates, repeat=alice.n_outcomes):
            meas = {(): alice}
            for o, bob in enumerate(bobs):
                meas[(o,)] = bob
            tree = StrategyTree(depth=2, measurements=meas, tag="AD")
            val = evaluate_strategy(t, svecs, tree)
            if val.value > best.value:
                best = StrategyValue(value=val.value, per_state=val.per_state, tag="AD")
    return best
