"""Transfer-matrix pressure, Markov measures and measure-theoretic pressure.

These routines share nothing with the word-enumeration code beyond the
space and potential tables, and serve as ground truth for it.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .potential import Potential, make_potential
from .symbolic import ShiftSpace, build_sft, word_array

RESIDUAL = 1e-12
MAX_ITER = 1_000_000


class OracleError(ValueError):
    """The oracle refuses an input (reducible matrix, no convergence, bad measure)."""


def is_irreducible(matrix) -> bool:
    """Strong connectivity of the support graph (transitive closure by repeated squaring)."""
    A = np.asarray(matrix) != 0
    k = len(A)
    reach = A | np.eye(k, dtype=bool)
    for _ in range(max(1, math.ceil(math.log2(max(k, 2))))):
        reach = (reach.astype(np.int64) @ reach.astype(np.int64)) > 0
    return bool(reach.all())


def perron_pair(M: np.ndarray, tol: float = RESIDUAL, max_iter: int = MAX_ITER) -> tuple:
    """Perron eigenvalue and positive right eigenvector of an irreducible non-negative matrix.

    Power iteration on ``M + I`` (aperiodic with the same Perron vector) from
    the all-ones vector; stops at relative residual ``tol``.
    """
    M = np.asarray(M, dtype=float)
    if not is_irreducible(M):
        raise OracleError("matrix is reducible")
    B = M + np.eye(len(M))
    v = np.ones(len(M))
    for _ in range(max_iter):
        w = B @ v
        w /= np.linalg.norm(w)
        lam = w @ (M @ w) / (w @ w)
        resid = np.linalg.norm(M @ w - lam * w) / max(abs(lam), 1e-300)
        v = w
        if resid < tol:
            return float(lam), v / v.sum()
    raise OracleError(f"power iteration did not reach residual {tol} in {max_iter} steps")


def transfer_matrix(space: ShiftSpace, f: Potential) -> tuple:
    """``(M, shift)`` with ``M_ab = A_ab exp(f(a) - shift)`` for a depth-1 potential."""
    if f.depth != 1 or f.offset:
        raise OracleError("the transfer matrix needs a depth-1 potential at offset 0")
    vals = np.array([f.values[(a,)] for a in range(space.alphabet_size)])
    shift = float(vals.max())
    return space.matrix * np.exp(vals - shift)[:, None], shift


def block_recode(space: ShiftSpace, f: Potential) -> tuple:
    """Recode to the ``r``-block presentation, where ``f`` becomes depth 1.

    Returns ``(space_r, f_r, words)`` with ``words[i]`` the ``r``-word of symbol ``i``.
    """
    r = f.depth
    if r == 1:
        return space, f, [(a,) for a in range(space.alphabet_size)]
    words = [tuple(int(s) for s in w) for w in word_array(space, r)]
    index = {w: i for i, w in enumerate(words)}
    adj = np.zeros((len(words), len(words)), dtype=bool)
    for w in words:
        for b in range(space.alphabet_size):
            if space.adjacency[w[-1]][b]:
                adj[index[w], index[w[1:] + (b,)]] = True
    recoded = build_sft(len(words), adj, space.sidedness, space.metric_base)
    g = make_potential(recoded, 1, {(i,): f.values[w] for i, w in enumerate(words)})
    return recoded, g, words


def transfer_pressure(space: ShiftSpace, f: Potential) -> float:
    """Topological pressure as the log Perron eigenvalue of the weighted adjacency matrix."""
    if not is_irreducible(space.matrix):
        raise OracleError("adjacency matrix is reducible")
    space_r, g, _ = block_recode(space, f)
    M, shift = transfer_matrix(space_r, g)
    lam, _ = perron_pair(M)
    return math.log(lam) + shift


@dataclass(frozen=True, eq=False)
class MarkovMeasure:
    transition: np.ndarray
    stationary: np.ndarray

    def to_dict(self) -> dict:
        return {"transition": self.transition.tolist(), "stationary": self.stationary.tolist()}


def stationary_distribution(P, tol: float = RESIDUAL, max_iter: int = MAX_ITER) -> np.ndarray:
    """Unique stationary vector of an irreducible stochastic matrix.

    Power iteration on the transpose of the lazy chain ``(P + I) / 2``, which
    has the same stationary vector and no periodicity.
    """
    P = np.asarray(P, dtype=float)
    if P.ndim != 2 or P.shape[0] != P.shape[1]:
        raise OracleError("transition matrix must be square")
    if (P < 0).any() or not np.allclose(P.sum(axis=1), 1.0, atol=1e-12, rtol=0):
        raise OracleError("rows must be non-negative and sum to 1")
    if not is_irreducible(P):
        raise OracleError("chain is reducible")
    lazy = (P + np.eye(len(P))) / 2
    pi = np.full(len(P), 1.0 / len(P))
    for _ in range(max_iter):
        nxt = pi @ lazy
        nxt /= nxt.sum()
        done = np.abs(nxt @ P - nxt).max() < tol
        pi = nxt
        if done:
            return pi
    raise OracleError("stationary iteration did not converge")


def markov_measure(space: ShiftSpace, transition) -> MarkovMeasure:
    """Validated Markov measure; the stationary vector is always recomputed."""
    P = np.array(transition, dtype=float)
    if P.shape != (space.alphabet_size, space.alphabet_size):
        raise OracleError("transition matrix does not match the alphabet")
    if ((P > 0) & ~space.matrix).any():
        raise OracleError("transition support violates adjacency")
    pi = stationary_distribution(P)
    return MarkovMeasure(P, pi)


def bernoulli_measure(space: ShiftSpace, probs) -> MarkovMeasure:
    """Product measure (every row equal to ``probs``); needs the full shift on the support."""
    probs = np.asarray(probs, dtype=float)
    return markov_measure(space, np.tile(probs, (space.alphabet_size, 1)))


def random_markov_measure(space: ShiftSpace, rng: np.random.Generator) -> MarkovMeasure:
    """Random positive weights on the allowed transitions, rows normalized."""
    W = rng.random(space.matrix.shape) * space.matrix
    W[space.matrix & (W == 0)] = 1e-3
    return markov_measure(space, W / W.sum(axis=1, keepdims=True))


def markov_from_json(space: ShiftSpace, data) -> MarkovMeasure:
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, dict) or "transition" not in data:
        raise OracleError("measure description needs 'transition'")
    return markov_measure(space, data["transition"])


def entropy(mu: MarkovMeasure) -> float:
    """``-sum_a pi_a sum_b P_ab log P_ab`` with ``0 log 0 = 0``."""
    P = mu.transition
    inner = np.where((P > 0) & (P < 1), P * np.log(np.where(P > 0, P, 1.0)), 0.0)
    return float(max(0.0, -(mu.stationary @ inner.sum(axis=1))))


def integral(mu: MarkovMeasure, f: Potential) -> float:
    k = len(mu.stationary)
    if f.depth == 1:
        return float(sum(mu.stationary[a] * f.values[(a,)] for a in range(k)))
    if f.depth == 2:
        return float(sum(mu.stationary[a] * mu.transition[a, b] * f.values[(a, b)]
                         for a in range(k) for b in range(k) if mu.transition[a, b] > 0))
    raise OracleError("measure pressure supports potentials of depth 1 or 2")


def measure_pressure(space: ShiftSpace, mu: MarkovMeasure, f: Potential) -> float:
    """``h_mu + integral of f``."""
    if f.depth > 2:
        raise OracleError("measure pressure supports potentials of depth 1 or 2")
    return entropy(mu) + integral(mu, f)


def equilibrium_markov(space: ShiftSpace, f: Potential) -> MarkovMeasure:
    """The Markov measure ``P_ab = M_ab v_b / (lambda v_a)`` built from the Perron pair."""
    if not is_irreducible(space.matrix):
        raise OracleError("adjacency matrix is reducible")
    M, _ = transfer_matrix(space, f)
    lam, v = perron_pair(M)
    P = M * v[None, :] / (lam * v[:, None])
    P /= P.sum(axis=1, keepdims=True)
    return markov_measure(space, P)
