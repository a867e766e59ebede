# -*- coding: utf-8 -*-

from __future__ import (absolute_import,
                        unicode_literals, print_function, division)

try:
    import mock
except ImportError:
    import unittest.mock as mock
import pytest

import cyclehom.instance
import cyclehom.testing


def oracle_sweep(count):
    """Parametrise a test case over random seeds.

    The test case should request a fixture called ``seed``. By default
    only the first ``--sweep-size`` seeds are used so the suite stays
    quick; with ``--oracle-sweep`` all ``count`` seeds are used. For
    example:

    ```
    @pytest.oracle_sweep(500)
    def test_foo(seed):
        pass
    ```
    """

    def decorator(function):
        function._oracle_sweep = count
        return function

    return decorator


def pytest_addoption(parser):
    parser.addoption("--oracle-sweep",
                     action="store_true",
                     default=False,
                     dest="oracle_sweep",
                     help="Run oracle comparisons over every seed")
    parser.addoption("--sweep-size",
                     action="store",
                     type=int,
                     default=10,
                     help=("Number of seeds oracle_sweep tests use when "
                           "--oracle-sweep is not given"),
                     dest="sweep_size")


def pytest_generate_tests(metafunc):
    """Generate seed-parametrised tests for oracle_sweep test cases."""
    if hasattr(metafunc.function, "_oracle_sweep"):
        if "seed" not in metafunc.fixturenames:
            raise Exception("You cannot use the oracle_sweep decorator "
                            "without requesting a 'seed' fixture")
        count = metafunc.function._oracle_sweep
        if not metafunc.config.getoption("oracle_sweep"):
            count = min(count, metafunc.config.getoption("sweep_size"))
        metafunc.parametrize("seed", list(range(count)))


def pytest_configure():
    pytest.Mock = mock.Mock
    pytest.MagicMock = mock.MagicMock
    pytest.oracle_sweep = oracle_sweep


@pytest.fixture
def c5():
    return cyclehom.instance.CycleTarget(2)


@pytest.fixture
def c7():
    return cyclehom.instance.CycleTarget(3)


@pytest.fixture
def petersen():
    return cyclehom.testing.target_from(cyclehom.testing.petersen_graph())


@pytest.fixture
def oracle_sweep_enabled(request):
    return request.config.getoption("oracle_sweep")
