import pytest

from quivgrass import fixtures
from quivgrass.polyring import parse_poly, y_var

_ACCEPTANCE = []


@pytest.fixture(scope="session")
def carlson():
    return fixtures.carlson()


@pytest.fixture(scope="session")
def a0():
    return fixtures.a0()


@pytest.fixture(scope="session")
def example_skeleton(carlson):
    return fixtures.carlson_example_skeleton(carlson)


def resolver(variables):
    table = {str(v): v for v in variables}
    return lambda text: parse_poly(text, table)


def y_names(text: str):
    """``Y1235`` style names, with ``Z`` and hatted aliases, mapped to Plücker variables."""
    aliases = {"Z": (3, 4, 5, 6), "H11": (1, 4, 5, 6), "H12": (2, 4, 5, 6),
               "H21": (1, 3, 5, 6), "H22": (2, 3, 5, 6)}

    def resolve(name):
        if name in aliases:
            return y_var(aliases[name])
        if name.startswith("Y") and name[1:].isdigit():
            return y_var(int(c) for c in name[1:])
        raise KeyError(name)

    return parse_poly(text, resolve)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or rep.when != "call":
        return
    number, title = marker.args
    _ACCEPTANCE.append((number, title, rep.passed, rep.duration))
    print(f"\nACCEPTANCE {number}: {'PASS' if rep.passed else 'FAIL'} ({rep.duration:.2f}s) {title}")


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): numbered acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, dur in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"{number}. {'PASS' if ok else 'FAIL'} {dur:6.2f}s  {title}")
