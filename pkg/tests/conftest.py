import json
import sys
from importlib import resources

import pytest
from hypothesis import HealthCheck, settings

from idemcodes.cli import parse_group_spec
from idemcodes.fields import get_field

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def fixtures_data():
    return json.loads((resources.files("idemcodes") / "data" / "fixtures.json").read_text())


FIXTURES = fixtures_data()


def fixture_group(name):
    return parse_group_spec(FIXTURES["groups"][name]["spec"])


@pytest.fixture(scope="session")
def g21():
    return fixture_group("order21")


@pytest.fixture(scope="session")
def g27():
    return fixture_group("order27")


@pytest.fixture(scope="session")
def g20():
    return fixture_group("frobenius20")


@pytest.fixture(scope="session")
def g55():
    return fixture_group("order55")


@pytest.fixture(scope="session")
def g105():
    return fixture_group("order105")


@pytest.fixture(scope="session")
def q8():
    return fixture_group("q8")


@pytest.fixture(scope="session")
def F2():
    return get_field(2)


@pytest.fixture(scope="session")
def F3():
    return get_field(3)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        for line in results[n].splitlines():
            terminalreporter.write_line(line)
