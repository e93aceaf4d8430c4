import pytest

_ACCEPTANCE: list[tuple[str, str, str]] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call":
        return
    label = marker.args[0]
    status = "PASS" if report.passed else "FAIL"
    text = item.function.__doc__.strip().splitlines()[0] if item.function.__doc__ else item.name
    printed = [ln for ln in report.capstdout.splitlines() if ln.startswith("criterion ")]
    if printed:
        text += " | " + printed[-1].split("  ", 1)[-1]
    _ACCEPTANCE.append((label, status, text))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion check")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, status, text in sorted(_ACCEPTANCE, key=lambda t: int(t[0])):
        terminalreporter.write_line(f"criterion {label}: {status}  {text}")
