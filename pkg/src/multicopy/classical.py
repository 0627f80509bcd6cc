"""Optimal bit-theory strategies for multi-copy discrimination.

Closed-form bounds and exact optima for ensembles of classical bit states
rho_i = p_i|0><0| + (1-p_i)|1><1| measured copy-by-copy in the computational
basis, plus an independent grid-search oracle.

All success probabilities decompose over Hamming classes: an outcome string
with j zeros has likelihood p^j (1-p)^(k-j), so only the count of zeros
matters for decoding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, pi, sqrt

import numpy as np

ORACLE_MAX_N = 5
ORACLE_MAX_K = 5
ORACLE_MAX_GRID = 5001


class PartialResultError(RuntimeError):
    """Enumeration budget exceeded; carries the best result found so far."""

    def __init__(self, message: str, best: "BitStrategyResult"):
        super().__init__(message)
        self.best = best


@dataclass(frozen=True)
class BitStrategyResult:
    """A bit discrimination strategy and its average success probability.

    probs holds the weight on |0> for each state (1-based labels follow list
    order); decoder maps the number of zeros in the k-bit outcome string to
    the guessed state label.
    """

    value: float
    probs: tuple
    decoder: dict


def g_exact(k: int) -> Fraction:
    """Exact rational value of the n*P_b(n,k) upper bound for n > k."""
    if k < 1:
        raise ValueError("k must be >= 1")
    total = Fraction(2)
    for j in range(1, k):
        total += comb(k, j) * Fraction(j, k) ** j * Fraction(k - j, k) ** (k - j)
    return total


def bit_upper_bound_g(k: int) -> float:
    """Upper bound g(k) on n*P_b(n,k); attained whenever n > k."""
    return float(g_exact(k))


def bit_exact_3_k(k: int) -> BitStrategyResult:
    """Optimal three-state bit strategy for k copies: 1 - 1/(3*2^(k-1)).

    The unique optimal ensemble is p = (0, 1/2, 1); all-ones strings decode
    to state 1, all-zeros to state 3, every mixed string to state 2.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    value = 1.0 - 1.0 / (3.0 * 2.0 ** (k - 1))
    decoder = {j: 2 for j in range(k + 1)}
    decoder[0] = 1
    decoder[k] = 3
    return BitStrategyResult(value=value, probs=(0.0, 0.5, 1.0), decoder=decoder)


def superbound_l(k: int) -> float:
    """Analytic envelope l(k) = 2 + 0.771*sqrt(pi*k), strictly above g(k)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return 2.0 + 0.771 * sqrt(pi * k)


def _term(j: int, k: int, p):
    return comb(k, j) * p**j * (1.0 - p) ** (k - j)


def _block_objective(js, k):
    def f(p):
        return sum(_term(j, k, p) for j in js)

    return f


_INVPHI = (sqrt(5.0) - 1.0) / 2.0


def _golden_max(f, lo: float = 0.0, hi: float = 1.0, xtol: float = 1e-12):
    """Golden-section maximization of a unimodal function on [lo, hi]."""
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > xtol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def _partitions(items, max_blocks):
    """All set partitions of `items` into at most max_blocks blocks."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _partitions(rest, max_blocks):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
        if len(part) < max_blocks:
            yield [[first]] + part


def bit_optimum_n_le_k(n: int, k: int, partitions: int = 200_000) -> BitStrategyResult:
    """Optimal bit value for 3 <= n <= k states by term-assignment search.

    The endpoint Hamming classes 0 and k are pinned to the states p=0 and
    p=1 (only those reach likelihood one); the middle classes 1..k-1 are
    partitioned among the remaining n-2 states and each state's p is
    optimized over [0,1].  Single-class blocks use the stationary point
    p = j/k; multi-class blocks use golden-section search.
    """
    if not (3 <= n <= k + 1 and k <= 8):
        raise ValueError("requires 3 <= n <= k + 1 and k <= 8")
    middle = list(range(1, k))
    best_value = -1.0
    best = None
    count = 0
    for part in _partitions(middle, n - 2):
        count += 1
        if count > partitions:
            if best is None:
                raise ValueError(f"enumeration budget {partitions} too small")
            raise PartialResultError(
                f"enumeration budget {partitions} exceeded", _assemble(best, k, n)
            )
        total = 2.0
        block_ps = []
        for block in part:
            if len(block) == 1:
                j = block[0]
                p = j / k
                v = _term(j, k, p)
            else:
                p, v = _golden_max(_block_objective(block, k))
            total += v
            block_ps.append((p, tuple(sorted(block))))
        if total > best_value * n:
            best_value = total / n
            best = (best_value, block_ps)
    return _assemble(best, k, n)


def _assemble(best, k: int, n: int) -> BitStrategyResult:
    value, block_ps = best
    entries = [(0.0, (0,)), (1.0, (k,))] + list(block_ps)
    # pad with unused states so len(probs) == n
    while len(entries) < n:
        entries.append((0.0, ()))
    entries.sort(key=lambda e: (e[0], e[1]))
    probs = tuple(p for p, _ in entries)
    decoder = {}
    for label, (_, js) in enumerate(entries, start=1):
        for j in js:
            decoder[j] = label
    return BitStrategyResult(value=value, probs=probs, decoder=decoder)


def brute_force_bit_oracle(n: int, k: int, grid: int = 1000) -> BitStrategyResult:
    """Grid-search oracle for the optimal bit value, independent of the
    closed forms above.

    Decoding each outcome string by maximum likelihood makes the objective
    sum_j C(k,j) max_i p_i^j (1-p_i)^(k-j), a sum of per-class maxima.
    Maximizing that over all p-vectors on the grid is therefore the same as
    assigning the k+1 Hamming classes to the n states in every possible way
    and scanning the grid once per block, which is what is done here; the
    result is exactly the exhaustive sorted-grid-vector optimum.
    """
    if n > ORACLE_MAX_N or k > ORACLE_MAX_K or grid > ORACLE_MAX_GRID:
        raise ValueError(
            f"oracle limited to n <= {ORACLE_MAX_N}, k <= {ORACLE_MAX_K}, "
            f"grid <= {ORACLE_MAX_GRID}"
        )
    if n < 1 or k < 1 or grid < 1:
        raise ValueError("n, k, grid must be positive")
    ps = np.linspace(0.0, 1.0, grid + 1)
    # table[j, t] = C(k,j) * p_t^j * (1-p_t)^(k-j)
    table = np.array(
        [comb(k, j) * ps**j * (1.0 - ps) ** (k - j) for j in range(k + 1)]
    )
    best_value = -1.0
    best_blocks = None
    for part in _partitions(list(range(k + 1)), n):
        block_sums = [table[block].sum(axis=0) for block in part]
        idxs = [int(np.argmax(s)) for s in block_sums]
        total = sum(float(s[i]) for s, i in zip(block_sums, idxs))
        if total > best_value * n + 1e-15:
            best_value = total / n
            best_blocks = [
                (float(ps[i]), tuple(sorted(block)))
                for block, i in zip(part, idxs)
            ]
    entries = list(best_blocks)
    while len(entries) < n:
        entries.append((0.0, ()))
    entries.sort(key=lambda e: (e[0], e[1]))
    probs = tuple(p for p, _ in entries)
    # re-derive the decoder by maximum likelihood, ties to the lowest label
    decoder = {}
    for j in range(k + 1):
        liks = [p**j * (1.0 - p) ** (k - j) for p in probs]
        decoder[j] = int(np.argmax(liks)) + 1
    return BitStrategyResult(value=best_value, probs=probs, decoder=decoder)
