"""Parametric constructors for three benchmark process families.

Each constructor returns a validated machine carrying a :class:`ZooDescriptor`
with the Markov order and cryptic order the construction guarantees, so tests
can use them as oracles without recomputing.

``golden_mean(R, k, p)``
    A ring of ``R + k`` states.  State 0 has a self-loop emitting 1 with
    probability ``p`` and starts a deterministic run of ``R`` zeros followed
    by ``k`` ones that returns to state 0.  Markov order ``R``, cryptic
    order ``k``.

``lollipop(N, M, p, q)``
    An infinite-cryptic family named for the shape of its pair-merger
    machine: ``N`` pair-states on a cycle with a stick of ``M`` (counting
    the terminal merge) hanging off it.  The underlying machine is a cycle
    of zeros with two escape states whose 1-emissions run down two parallel
    tails that merge after ``M`` steps.

``biased_coins(p, q)``
    Two alternating biased coins; the single nontrivial state-pair merges on
    both symbols at once, giving the overlap ``sqrt(p(1-q)) + sqrt(q(1-p))``
    for every positive codeword length.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .machines import EpsilonMachine, validate


@dataclass(frozen=True)
class ZooDescriptor:
    """Construction metadata attached to zoo machines."""

    family: str
    params: Mapping[str, float]
    expected_markov_order: float   # int or math.inf
    expected_cryptic_order: float  # int or math.inf


def _finish(alphabet, labels, mats, descriptor):
    report = validate(EpsilonMachine(
        alphabet=tuple(alphabet), labels=tuple(labels), matrices=mats,
        descriptor=descriptor))
    if not report.ok:
        raise AssertionError(f"zoo constructor produced an invalid machine: "
                             f"{report.failures()}")
    return report.machine


def _check_prob(name, value):
    if not (0.0 < value < 1.0):
        raise ValueError(f"{name} must lie in (0, 1), got {value}")


def _state_names(n):
    if n <= 26:
        return [chr(ord("A") + i) for i in range(n)]
    return [f"S{i}" for i in range(n)]


def golden_mean(R: int, k: int, p: float) -> EpsilonMachine:
    """Golden-mean family with Markov order ``R`` and cryptic order ``k``.

    State 0 carries the only stochastic choice: emit 1 with probability ``p``
    and stay, or emit 0 with probability ``1 - p`` and enter the ring.  The
    ring then emits ``R - 1`` further zeros and ``k`` ones deterministically.
    The stationary distribution is ``pi_0 = 1 / (R + k - p(R + k - 1))`` with
    every other state at ``(1 - p) * pi_0``.
    """
    if not (R >= k >= 1):
        raise ValueError(f"golden_mean requires R >= k >= 1, got R={R}, k={k}")
    _check_prob("p", p)
    n = R + k
    labels = _state_names(n)
    T0 = np.zeros((n, n))
    T1 = np.zeros((n, n))
    T1[0, 0] = p
    T0[0, 1 % n] = 1.0 - p
    for i in range(1, R):
        T0[i, i + 1] = 1.0
    for i in range(R, n):
        T1[i, (i + 1) % n] = 1.0
    desc = ZooDescriptor("golden_mean", {"R": R, "k": k, "p": p},
                         expected_markov_order=R, expected_cryptic_order=k)
    return _finish(["0", "1"], labels, {"0": T0, "1": T1}, desc)


def biased_coins(p: float, q: float) -> EpsilonMachine:
    """Two-state alternating biased coins.

    Coin A emits 0 with probability ``1 - q`` (staying on A) and 1 with
    probability ``q`` (switching to B); coin B emits 1 with probability
    ``1 - p`` (staying) and 0 with probability ``p`` (switching to A).  Both
    symbols merge the pair (A, B), so its pair-merger machine is a single
    pair-state with two parallel edges into the sink.
    """
    _check_prob("p", p)
    _check_prob("q", q)
    T0 = np.array([[1.0 - q, 0.0], [p, 0.0]])
    T1 = np.array([[0.0, q], [0.0, 1.0 - p]])
    desc = ZooDescriptor("biased_coins", {"p": p, "q": q},
                         expected_markov_order=1, expected_cryptic_order=1)
    return _finish(["0", "1"], ["A", "B"], {"0": T0, "1": T1}, desc)


def lollipop(N: int, M: int, p: float, q: float) -> EpsilonMachine:
    """Infinite-cryptic family whose pair-merger machine is lollipop shaped.

    For ``N >= 3`` the machine is a cycle ``C0 .. C{N-1}`` of zeros whose two
    adjacent escape states ``C{N-1}`` and ``C0`` emit 1 with probabilities
    ``p`` and ``q``.  The 1-emissions enter two parallel tails of ``M - 1``
    states each, emitting ones, that merge at ``C1``: the offset-one cycle
    pairs form the ``N``-cycle head, and the tail pairs form the stick that
    reaches the sink after ``M`` steps.  The combined pair-transition matrix
    has eigenvalues ``{0 (x M)} U {((1-p)(1-q))^(1/N) e^(2 pi i n / N)}``.

    ``N == 2`` needs a different head: two shadowed 2-cycles of zeros
    ``X0 <-> X1`` and ``Y0 <-> Y1`` with escape probabilities ``p, q, q, p``
    so the two alternating head pairs carry the full escape weight, while
    ``{X1, Y1}`` merges immediately and ``{X0, Y0}`` feeds the stick.
    """
    if N < 2 or M < 1:
        raise ValueError(f"lollipop requires N >= 2 and M >= 1, got N={N}, M={M}")
    _check_prob("p", p)
    _check_prob("q", q)
    us = [f"U{i}" for i in range(1, M)]
    vs = [f"V{i}" for i in range(1, M)]
    if N >= 3:
        cyc = [f"C{i}" for i in range(N)]
        labels = cyc + us + vs
        idx = {s: i for i, s in enumerate(labels)}
        n = len(labels)
        T0 = np.zeros((n, n))
        T1 = np.zeros((n, n))
        for i in range(N):
            w = 1.0 - p if i == N - 1 else (1.0 - q if i == 0 else 1.0)
            T0[idx[cyc[i]], idx[cyc[(i + 1) % N]]] = w
        # both escape tails rejoin the cycle one state past the q-escape
        u_chain = us + [cyc[1]]
        v_chain = vs + [cyc[1]]
        T1[idx[cyc[N - 1]], idx[u_chain[0]]] = p
        T1[idx[cyc[0]], idx[v_chain[0]]] = q
        for a, b in zip(us, u_chain[1:]):
            T1[idx[a], idx[b]] = 1.0
        for a, b in zip(vs, v_chain[1:]):
            T1[idx[a], idx[b]] = 1.0
    else:
        labels = ["X0", "X1", "Y0", "Y1"] + us + vs
        idx = {s: i for i, s in enumerate(labels)}
        n = len(labels)
        T0 = np.zeros((n, n))
        T1 = np.zeros((n, n))
        T0[idx["X0"], idx["X1"]] = 1.0 - p
        T0[idx["X1"], idx["X0"]] = 1.0 - q
        T0[idx["Y0"], idx["Y1"]] = 1.0 - q
        T0[idx["Y1"], idx["Y0"]] = 1.0 - p
        u_chain = us + ["X1"]
        v_chain = vs + ["X1"]
        T1[idx["X0"], idx[u_chain[0]]] = p
        T1[idx["Y0"], idx[v_chain[0]]] = q
        for a, b in zip(us, u_chain[1:]):
            T1[idx[a], idx[b]] = 1.0
        for a, b in zip(vs, v_chain[1:]):
            T1[idx[a], idx[b]] = 1.0
        T1[idx["X1"], idx["Y0"]] = q
        T1[idx["Y1"], idx["Y0"]] = p
    desc = ZooDescriptor("lollipop", {"N": N, "M": M, "p": p, "q": q},
                         expected_markov_order=math.inf,
                         expected_cryptic_order=math.inf)
    return _finish(["0", "1"], labels, {"0": T0, "1": T1}, desc)
