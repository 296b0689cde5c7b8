"""Machine JSON format and curve emitters.

A machine file looks like::

    {
      "alphabet": ["0", "1"],
      "states": ["A", "B"],
      "transitions": [
        {"from": "A", "symbol": "1", "to": "A", "p": 0.7},
        ...
      ]
    }

The stationary distribution is never stored; loading always recomputes it.
All numeric text uses 17 significant digits, which round-trips doubles
exactly.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .costs import CqCurve
from .errors import StructureError
from .machines import EDGE_EPS, EpsilonMachine, validate


def fmt17(x: float) -> str:
    if x is math.inf:
        return "inf"
    return format(float(x), ".17g")


def machine_to_dict(machine: EpsilonMachine) -> dict:
    transitions = []
    for i in range(machine.state_count):
        for x in machine.alphabet:
            row = machine.matrices[x][i]
            for j in np.nonzero(row > EDGE_EPS)[0]:
                transitions.append({
                    "from": machine.labels[i],
                    "symbol": x,
                    "to": machine.labels[int(j)],
                    "p": float(row[j]),
                })
    return {
        "alphabet": list(machine.alphabet),
        "states": list(machine.labels),
        "transitions": transitions,
    }


def machine_from_dict(data: dict) -> EpsilonMachine:
    """Build an unvalidated machine candidate from the JSON structure."""
    try:
        alphabet = tuple(str(x) for x in data["alphabet"])
        labels = tuple(str(s) for s in data["states"])
        transitions = data["transitions"]
    except (KeyError, TypeError) as exc:
        raise StructureError(f"machine JSON is missing field: {exc}") from exc
    if len(set(labels)) != len(labels):
        raise StructureError("duplicate state labels")
    if len(set(alphabet)) != len(alphabet):
        raise StructureError("duplicate alphabet symbols")
    index = {s: i for i, s in enumerate(labels)}
    n = len(labels)
    mats = {x: np.zeros((n, n)) for x in alphabet}
    for t in transitions:
        try:
            i = index[t["from"]]
            j = index[t["to"]]
            x = t["symbol"]
            p = float(t["p"])
        except (KeyError, TypeError, ValueError) as exc:
            raise StructureError(f"bad transition entry {t!r}") from exc
        if x not in mats:
            raise StructureError(f"transition uses unknown symbol {x!r}")
        if not math.isfinite(p) or p < 0:
            raise StructureError(f"bad probability {p!r} in {t!r}")
        if mats[x][i, j] != 0.0:
            raise StructureError(f"duplicate transition {t!r}")
        mats[x][i, j] = p
    return EpsilonMachine(alphabet=alphabet, labels=labels, matrices=mats)


def save_machine(machine: EpsilonMachine, path) -> None:
    with open(path, "w") as fh:
        json.dump(machine_to_dict(machine), fh, indent=2)
        fh.write("\n")


def load_machine(path) -> EpsilonMachine:
    """Load, validate, and attach the recomputed stationary distribution."""
    with open(path) as fh:
        data = json.load(fh)
    candidate = machine_from_dict(data)
    report = validate(candidate)
    if not report.ok:
        raise StructureError("machine fails validation: "
                             + "; ".join(report.failures()))
    return report.machine


def curve_to_csv(curve: CqCurve, include_infinity: bool = False) -> str:
    lines = ["L,cq,c_mu,cq_inf"]
    for L, v in curve.samples:
        lines.append(f"{L},{fmt17(v)},{fmt17(curve.c_mu)},{fmt17(curve.cq_infinity)}")
    if include_infinity:
        lines.append(f"inf,{fmt17(curve.cq_infinity)},{fmt17(curve.c_mu)},"
                     f"{fmt17(curve.cq_infinity)}")
    return "\n".join(lines) + "\n"


def curve_to_json(curve: CqCurve) -> str:
    payload = {
        "samples": [[L, v] for L, v in curve.samples],
        "c_mu": curve.c_mu,
        "cq_infinity": curve.cq_infinity,
    }
    return json.dumps(payload, indent=2) + "\n"
