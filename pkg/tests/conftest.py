import sys

import pytest

import hyperkit as hk


@pytest.fixture(scope="session")
def tables():
    return hk.builtin_hypergroups()


@pytest.fixture(scope="session")
def rings():
    return hk.builtin_fusion_rings()


@pytest.fixture(scope="session")
def groups():
    return hk.builtin_groups()


@pytest.fixture(scope="session")
def groupoids():
    return hk.builtin_groupoids()


def pytest_runtest_logreport(report):
    # one visible pass/fail line per acceptance criterion
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    outcome = "PASS" if report.passed else "FAIL"
    sys.stderr.write(f"[acceptance] {outcome} {name}\n")
