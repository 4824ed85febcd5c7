import os

import pytest

from rsrepair import build_field


def pytest_collection_modifyitems(config, items):
    if os.environ.get("RSREPAIR_EXTENDED") == "1":
        return
    skip = pytest.mark.skip(reason="extended check; set RSREPAIR_EXTENDED=1")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def f4():
    return build_field(2, 1, 2)


@pytest.fixture(scope="session")
def f8():
    return build_field(2, 1, 3)


@pytest.fixture(scope="session")
def f9():
    return build_field(3, 1, 2)


@pytest.fixture(scope="session")
def f16():
    return build_field(2, 1, 4)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
