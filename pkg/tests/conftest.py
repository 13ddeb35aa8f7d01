import pytest

_LINES = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(cid, text): an acceptance criterion")


@pytest.fixture
def measured(request):
    """Dict a criterion test fills with the numbers it observed."""
    d = {}
    request.node._measured = d
    return d


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None or rep.when != "call":
        return
    cid, text = mark.args
    extra = getattr(item, "_measured", {})
    detail = ", ".join(f"{k}={v}" for k, v in extra.items())
    line = f"{'PASS' if rep.passed else 'FAIL'}  [{cid}] {text}"
    if detail:
        line += f"  ({detail})"
    _LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in _LINES:
        terminalreporter.write_line(line)
