import sys
from importlib import resources

import numpy as np
import pytest

from tenclass import DenseTensor


def build_example_array() -> np.ndarray:
    """Order-4, dimension-4 B-Nekrasov tensor that is not Nekrasov, built entry by entry."""
    a = np.zeros((4, 4, 4, 4))
    # 0-based indices below; row 1 in the usual 1-based notation is a[0].
    a[0] = 2.0
    a[0, 0, 0, 0] = 10.0
    a[0, 0, 0, 1] = a[0, 1, 0, 0] = a[0, 0, 1, 0] = 1.0
    a[0, 3, 3, 3] = -1.0
    a[1] = 3.0
    a[1, 1, 1, 1] = 6.8
    a[1, 0, 0, 0] = 2.0
    a[1, 2, 1, 1] = a[1, 1, 2, 1] = a[1, 1, 1, 2] = 2.0
    a[2, 2, 2, 2] = 3.0
    a[2, 1, 1, 1] = -1.0
    a[3, 3, 3, 3] = 10.0
    a[3, 3, 3, 0] = a[3, 3, 0, 3] = a[3, 0, 3, 3] = -3.0
    return a


def build_small_nekrasov() -> DenseTensor:
    """m=4, n=2: a_1111=3, a_2222=5, a_2111=1, other row-1 entries 0.2, other row-2 entries 0.1."""
    a = np.empty((2,) * 4)
    a[0] = 0.2
    a[1] = 0.1
    a[0, 0, 0, 0] = 3.0
    a[1, 1, 1, 1] = 5.0
    a[1, 0, 0, 0] = 1.0
    return DenseTensor.from_array(a)


@pytest.fixture
def example():
    return DenseTensor.from_array(build_example_array())


@pytest.fixture
def small_nekrasov():
    return build_small_nekrasov()


@pytest.fixture
def data_dir():
    return resources.files("tenclass") / "data"


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
