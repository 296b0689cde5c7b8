"""Finite unifilar edge-output hidden Markov machines.

A machine is given by one nonnegative labeled transition matrix per output
symbol: entry ``T[x][i, j]`` is the joint probability ``Pr(state j, symbol x
| state i)`` of emitting ``x`` while moving from state ``i`` to state ``j``.
Unifilarity means every row of every labeled matrix has at most one positive
entry, so a state and an emitted symbol determine the successor.  Minimal
machines of this kind are the epsilon-machines of computational mechanics;
all quantities in this package are computed relative to the given machine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Mapping, Optional, Sequence

import numpy as np

from .errors import ReducibleError, StructureError

# Stochasticity / stationarity tolerance.
ATOL = 1e-12
# Entries at or below this are treated as structural zeros, so float dust
# cannot create spurious edges.
EDGE_EPS = 1e-15


@dataclass(frozen=True)
class EpsilonMachine:
    """Immutable unifilar machine over an ordered alphabet.

    Parameters
    ----------
    alphabet : ordered symbol labels.
    labels : human-readable state labels; indices are the canonical identity.
    matrices : mapping symbol -> (n, n) labeled transition matrix.
    pi : stationary distribution, or None for a not-yet-validated candidate.
    descriptor : optional construction metadata (see :mod:`qcost.zoo`).
    """

    alphabet: tuple[str, ...]
    labels: tuple[str, ...]
    matrices: Mapping[str, np.ndarray]
    pi: Optional[np.ndarray] = None
    descriptor: object = None

    def __post_init__(self):
        mats = {}
        for x in self.alphabet:
            if x not in self.matrices:
                raise StructureError(f"missing labeled matrix for symbol {x!r}")
            m = np.array(self.matrices[x], dtype=float)
            m.setflags(write=False)
            mats[x] = m
        object.__setattr__(self, "matrices", mats)
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "labels", tuple(self.labels))
        if self.pi is not None:
            p = np.array(self.pi, dtype=float)
            p.setflags(write=False)
            object.__setattr__(self, "pi", p)

    @property
    def state_count(self) -> int:
        return len(self.labels)

    def transition_matrix(self) -> np.ndarray:
        """Net state-to-state matrix, the sum over all output symbols."""
        return sum(self.matrices[x] for x in self.alphabet)

    def symbol_probability(self, state: int, symbol: str) -> float:
        """Pr(symbol | state), the row sum of the labeled matrix."""
        return float(self.matrices[symbol][state].sum())

    def successor(self, state: int, symbol: str):
        """Unique successor on ``symbol``, or None when the emission is
        forbidden from ``state``."""
        row = self.matrices[symbol][state]
        nz = np.nonzero(row > EDGE_EPS)[0]
        if nz.size == 0:
            return None
        return int(nz[0])

    def with_pi(self, pi: np.ndarray) -> "EpsilonMachine":
        return replace(self, pi=pi)


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of the structural and probabilistic machine checks."""

    row_sums_ok: bool
    row_sum_violations: tuple[int, ...]
    unifilar_ok: bool
    unifilar_violations: tuple[tuple[int, str], ...]
    irreducible_ok: bool
    unreachable_states: tuple[int, ...]
    stationary_ok: bool
    stationary_residual: float
    machine: Optional[EpsilonMachine]

    @property
    def ok(self) -> bool:
        return (self.row_sums_ok and self.unifilar_ok
                and self.irreducible_ok and self.stationary_ok)

    def failures(self) -> list[str]:
        out = []
        if not self.row_sums_ok:
            out.append(f"row_stochasticity: states {list(self.row_sum_violations)}")
        if not self.unifilar_ok:
            out.append(f"unifilarity: (state, symbol) {list(self.unifilar_violations)}")
        if not self.irreducible_ok:
            out.append(f"irreducibility: unreachable states {list(self.unreachable_states)}")
        if not self.stationary_ok:
            out.append(f"stationarity: residual {self.stationary_residual:.3e}")
        return out


def _check_structure(machine: EpsilonMachine):
    n = machine.state_count
    if n < 1:
        raise StructureError("machine needs at least one state")
    for x in machine.alphabet:
        m = machine.matrices[x]
        if m.shape != (n, n):
            raise StructureError(
                f"matrix for symbol {x!r} has shape {m.shape}, expected {(n, n)}")
        if not np.all(np.isfinite(m)):
            raise StructureError(f"matrix for symbol {x!r} has non-finite entries")
        if np.any(m < -ATOL):
            raise StructureError(f"matrix for symbol {x!r} has negative entries")


def _strongly_connected(T: np.ndarray):
    """Return (ok, unreachable-from-0 or not-coreachable-to-0 states)."""
    n = T.shape[0]
    adj = T > EDGE_EPS

    def reach(mat):
        seen = np.zeros(n, dtype=bool)
        stack = [0]
        seen[0] = True
        while stack:
            u = stack.pop()
            for v in np.nonzero(mat[u])[0]:
                if not seen[v]:
                    seen[v] = True
                    stack.append(int(v))
        return seen

    fwd = reach(adj)
    bwd = reach(adj.T)
    bad = np.nonzero(~(fwd & bwd))[0]
    return bad.size == 0, tuple(int(i) for i in bad)


def stationary_distribution(machine: EpsilonMachine) -> np.ndarray:
    """Unique left fixed point of the net transition matrix, normalized.

    Computed from the eigenvector of ``T.T`` at eigenvalue 1; the machine
    must be irreducible so the fixed point is unique.

    Raises
    ------
    ReducibleError
        If the state graph is not strongly connected; the message names the
        offending states.
    """
    T = machine.transition_matrix()
    ok, bad = _strongly_connected(T)
    if not ok:
        names = [machine.labels[i] for i in bad]
        raise ReducibleError(f"state graph is not strongly connected; states "
                             f"{names} are not in the reachable core")
    w, v = np.linalg.eig(T.T)
    i = int(np.argmin(np.abs(w - 1.0)))
    pi = np.real(v[:, i])
    pi = pi / pi.sum()
    pi[np.abs(pi) < EDGE_EPS] = 0.0
    residual = float(np.max(np.abs(pi @ T - pi)))
    if residual > ATOL:
        # Refine with one direct solve: replace a row of (T.T - I) with the
        # normalization constraint.
        A = T.T - np.eye(machine.state_count)
        A[-1, :] = 1.0
        b = np.zeros(machine.state_count)
        b[-1] = 1.0
        pi = np.linalg.solve(A, b)
        residual = float(np.max(np.abs(pi @ T - pi)))
        if residual > ATOL:
            raise ReducibleError(f"stationary fixed point residual {residual:.3e}")
    return pi


def validate(candidate: EpsilonMachine) -> ValidationReport:
    """Run all machine checks and report every violation.

    The candidate may come without a stationary distribution; when all checks
    pass, the distribution is computed and attached to ``report.machine``.
    Dimension mismatches and non-finite entries raise ``StructureError``
    instead of being reported, since no further check is meaningful.
    """
    _check_structure(candidate)
    n = candidate.state_count
    T = candidate.transition_matrix()

    row_bad = tuple(int(i) for i in np.nonzero(np.abs(T.sum(axis=1) - 1.0) > ATOL)[0])

    uni_bad = []
    for x in candidate.alphabet:
        m = candidate.matrices[x]
        for i in range(n):
            if int((m[i] > EDGE_EPS).sum()) > 1:
                uni_bad.append((i, x))

    irr_ok, unreachable = _strongly_connected(T)

    stationary_ok = False
    residual = math.inf
    machine = None
    if not row_bad and not uni_bad and irr_ok:
        if candidate.pi is None:
            pi = stationary_distribution(candidate)
        else:
            pi = np.asarray(candidate.pi, dtype=float)
        residual = float(np.max(np.abs(pi @ T - pi)))
        stationary_ok = (residual <= ATOL and np.all(pi >= -ATOL)
                         and abs(pi.sum() - 1.0) <= ATOL)
        if stationary_ok:
            machine = candidate.with_pi(pi)
    elif candidate.pi is not None:
        residual = float(np.max(np.abs(candidate.pi @ T - candidate.pi)))
        stationary_ok = residual <= ATOL

    return ValidationReport(
        row_sums_ok=not row_bad,
        row_sum_violations=row_bad,
        unifilar_ok=not uni_bad,
        unifilar_violations=tuple(uni_bad),
        irreducible_ok=irr_ok,
        unreachable_states=unreachable,
        stationary_ok=stationary_ok,
        stationary_residual=residual,
        machine=machine,
    )


def word_probability(machine: EpsilonMachine, word: Sequence[str]) -> float:
    """Probability that the stationary machine emits ``word``.

    ``word`` is a sequence of alphabet symbols (a plain string works for
    single-character alphabets).  The empty word has probability 1.
    """
    if len(word) == 0:
        return 1.0
    pi = machine.pi
    if pi is None:
        pi = stationary_distribution(machine)
    v = pi.copy()
    for x in word:
        if x not in machine.matrices:
            raise StructureError(f"unknown symbol {x!r}")
        v = v @ machine.matrices[x]
    return float(v.sum())


def statistical_complexity(machine: EpsilonMachine) -> float:
    """Shannon entropy of the stationary state distribution, in bits."""
    pi = machine.pi
    if pi is None:
        pi = stationary_distribution(machine)
    pos = pi[pi > 0]
    return float(-(pos * np.log2(pos)).sum())


def is_counifilar(machine: EpsilonMachine) -> bool:
    """True when no state has two incoming edges carrying the same symbol.

    Counifilar machines admit no quantum compression: their cost equals the
    statistical complexity at every codeword length.
    """
    for x in machine.alphabet:
        cols = (machine.matrices[x] > EDGE_EPS).sum(axis=0)
        if np.any(cols > 1):
            return False
    return True
