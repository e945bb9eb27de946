import numpy as np
import pytest

from fairaug.datasets import toy_case1, toy_case2


@pytest.fixture
def case1():
    return toy_case1()


@pytest.fixture
def case2():
    return toy_case2()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
