"""Brute-force reference computations in the explicit word-state space.

These enumerate every length-``L`` word, so they are exponential in ``L``
and exist purely to validate the QPMM-based routes at desk scale.  A size
guard rejects anything past ten million coordinates.

Unifilarity keeps the enumeration sparse: from a fixed start state each word
reaches at most one final state, so a signal state has at most one amplitude
per word and is stored as a mapping ``(word, final_state) -> amplitude``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError
from .machines import EpsilonMachine

SIZE_GUARD = 10_000_000


@dataclass(frozen=True)
class SignalEnsemble:
    """Explicit signal states: one sparse unit vector per machine state."""

    machine: EpsilonMachine
    L: int
    amplitudes: tuple  # per state: dict (word, final_state) -> amplitude

    @property
    def weights(self) -> np.ndarray:
        return self.machine.pi


def _guard(machine: EpsilonMachine, L: int):
    dim = len(machine.alphabet) ** L * machine.state_count
    if dim > SIZE_GUARD:
        raise CapacityError(
            f"word-state space has {dim} coordinates, above the "
            f"{SIZE_GUARD} guard; the oracle is for small L only")


def signal_states(machine: EpsilonMachine, L: int) -> SignalEnsemble:
    """Explicit length-``L`` signal states of every machine state.

    The amplitude on coordinate ``(word, final)`` is the square root of the
    joint probability of emitting ``word`` and landing on ``final``.
    """
    _guard(machine, L)
    states = []
    for i in range(machine.state_count):
        amps = {("", i): 1.0}
        for _ in range(L):
            nxt = {}
            for (w, s), a in amps.items():
                for x in machine.alphabet:
                    p = machine.symbol_probability(s, x)
                    if p <= 0.0:
                        continue
                    nxt[(w + x, machine.successor(s, x))] = a * math.sqrt(p)
            amps = nxt
        states.append(amps)
    return SignalEnsemble(machine=machine, L=L, amplitudes=tuple(states))


def overlap_matrix(ensemble: SignalEnsemble) -> np.ndarray:
    """Pairwise inner products of the explicit signal states."""
    amps = ensemble.amplitudes
    n = len(amps)
    out = np.eye(n)
    for i in range(n):
        for j in range(i + 1, n):
            small, large = (amps[i], amps[j]) if len(amps[i]) <= len(amps[j]) \
                else (amps[j], amps[i])
            s = sum(a * large[key] for key, a in small.items() if key in large)
            out[i, j] = out[j, i] = s
    return out


def cq_naive(machine: EpsilonMachine, L: int) -> float:
    """Ground-truth quantum cost at length ``L`` from explicit signal states.

    Builds the ensemble Gram matrix from enumerated overlaps and takes its
    entropy with a symmetric eigensolve; shares no code with the QPMM route.
    """
    ens = signal_states(machine, L)
    ov = overlap_matrix(ens)
    root = np.sqrt(machine.pi)
    G = root[:, None] * ov * root[None, :]
    lam = np.linalg.eigvalsh(G)
    pos = lam[lam > 1e-14]
    return float(-(pos * np.log2(pos)).sum())


def enumerate_l_merges(machine: EpsilonMachine, L: int) -> list:
    """All L-merges: two disjoint state paths emitting the same word that
    meet for the first time exactly on the last symbol.

    Returns tuples ``(word, path_a, path_b, final_state)`` where the paths
    are the ``L + 1``-state sequences including the shared final state, with
    ``path_a`` starting at the smaller state index.  Empty for ``L = 0``.
    """
    _guard(machine, L)
    if L == 0:
        return []
    n = machine.state_count
    merges = []
    for word in itertools.product(machine.alphabet, repeat=L):
        paths = []
        for start in range(n):
            path = [start]
            s = start
            ok = True
            for x in word:
                s = machine.successor(s, x)
                if s is None:
                    ok = False
                    break
                path.append(s)
            if ok:
                paths.append(path)
        for pa, pb in itertools.combinations(paths, 2):
            disjoint = all(a != b for a, b in zip(pa[:-1], pb[:-1]))
            if disjoint and pa[-1] == pb[-1]:
                merges.append(("".join(word), tuple(pa), tuple(pb), pa[-1]))
    return merges
