"""Per-criterion PASS/FAIL summary for tests tagged ``@pytest.mark.criterion(n, title)``."""

_criteria = {}  # n -> [title, outcomes]
_owner = {}  # nodeid -> n


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion a test belongs to")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is None:
            continue
        n, title = mark.args
        _criteria.setdefault(n, [title, []])
        _owner[item.nodeid] = n


def pytest_runtest_logreport(report):
    n = _owner.get(report.nodeid)
    if n is None:
        return
    if report.when == "call" or report.failed:
        _criteria[n][1].append(report.passed or report.skipped and report.when == "call")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        title, outcomes = _criteria[n]
        if not outcomes:
            status = "NOT RUN"
        else:
            status = "PASS" if all(outcomes) else "FAIL"
        terminalreporter.write_line(f"criterion {n:>2}  {status:<7}  {title}")
