#!/usr/bin/env python3
"""Build pair-merger machines for the whole zoo and export DOT drawings.

Writes one .dot file per machine next to this script; render them with
``dot -Tpng file.dot -o file.png`` if graphviz is installed.
"""

import math
import pathlib

import qcost

here = pathlib.Path(__file__).parent

zoo = {
    "golden_mean_4_3": qcost.golden_mean(4, 3, 0.7),
    "golden_mean_1_1": qcost.golden_mean(1, 1, 0.5),
    "biased_coins": qcost.biased_coins(0.5, 0.25),
    "lollipop_7_4": qcost.lollipop(7, 4, 0.5, 0.5),
    "lollipop_2_3": qcost.lollipop(2, 3, 0.5, 0.5),
}

for name, machine in zoo.items():
    qp = qcost.build_qpmm(machine)
    k = qcost.cryptic_order(qp)
    kind = "cyclic (infinite horizon)" if qp.depth is math.inf \
        else f"tree/DAG of depth {qp.depth}"
    print(f"{name}: {machine.state_count} states, "
          f"{len(qp.pairs)} retained pairs, {kind}, cryptic order {k}")
    (here / f"{name}.machine.dot").write_text(qcost.to_dot(machine))
    (here / f"{name}.qpmm.dot").write_text(qcost.to_dot(qp))

print("\nwrote .dot files to", here)
