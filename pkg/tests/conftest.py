from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_lines = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion covered by the test")
    config._criterion_lines = []


def pytest_runtest_logreport(report):
    # the report carries no marker; the item stashes it in user_properties
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        number, text = props["criterion"]
        if report.passed:
            status = "PASS"
        elif hasattr(report, "wasxfail"):
            status = "FAIL (expected, unattainable as stated)"
        else:
            status = "FAIL"
        _lines.append((number, f"{status} criterion {number}: {text}"))


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            item.user_properties.append(("criterion", tuple(mark.args)))


def pytest_terminal_summary(terminalreporter):
    if not _lines:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_lines, key=lambda x: x[0]):
        terminalreporter.write_line(line)
