import numpy as np
import pytest

import qcost


@pytest.fixture(scope="session")
def gm43():
    return qcost.golden_mean(4, 3, 0.7)


@pytest.fixture(scope="session")
def gm22():
    return qcost.golden_mean(2, 2, 0.5)


@pytest.fixture(scope="session")
def bc():
    return qcost.biased_coins(0.5, 0.25)


@pytest.fixture(scope="session")
def lp74():
    return qcost.lollipop(7, 4, 0.5, 0.5)


@pytest.fixture(scope="session")
def lp32():
    return qcost.lollipop(3, 2, 0.5, 0.5)


@pytest.fixture(scope="session")
def zoo_fixtures(gm43, gm22, lp32, lp74, bc):
    return {
        "golden_mean(4,3,0.7)": gm43,
        "golden_mean(2,2,0.5)": gm22,
        "lollipop(3,2,0.5,0.5)": lp32,
        "lollipop(7,4,0.5,0.5)": lp74,
        "biased_coins(0.5,0.25)": bc,
    }


@pytest.fixture(scope="session")
def iid_coin():
    """Single-state fair coin; the smallest counifilar machine."""
    m = qcost.EpsilonMachine(alphabet=("0", "1"), labels=("A",),
                             matrices={"0": np.array([[0.5]]),
                                       "1": np.array([[0.5]])})
    report = qcost.validate(m)
    assert report.ok
    return report.machine


@pytest.fixture(scope="session")
def alternator():
    """Two-state counifilar machine emitting 01 repeated."""
    m = qcost.EpsilonMachine(
        alphabet=("0", "1"), labels=("A", "B"),
        matrices={"0": np.array([[0.0, 1.0], [0.0, 0.0]]),
                  "1": np.array([[0.0, 0.0], [1.0, 0.0]])})
    report = qcost.validate(m)
    assert report.ok
    return report.machine
