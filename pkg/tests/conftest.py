import pytest

from tbtrellis.fixtures import load_fixture

_ACCEPTANCE: dict[int, tuple[str, bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or rep.when != "call":
        return
    number, title = marker.args
    ok = rep.passed and _ACCEPTANCE.get(number, (title, True))[1]
    _ACCEPTANCE[number] = (title, ok)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, ok = _ACCEPTANCE[number]
        tr.write_line(f"[{'PASS' if ok else 'FAIL'}] {number:>2}. {title}")


@pytest.fixture(scope="session")
def hb():
    return load_fixture("hamming_b").spec


@pytest.fixture(scope="session")
def ha():
    return load_fixture("hamming_a").spec


@pytest.fixture(scope="session")
def kvfix():
    return load_fixture("hamming_kv")


@pytest.fixture(scope="session")
def dualfix():
    return load_fixture("hamming_dual")
