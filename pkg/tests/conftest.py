import sys


def pytest_terminal_summary(terminalreporter):
    mod = next((m for name, m in sys.modules.items() if name.endswith("test_acceptance")), None)
    report = getattr(mod, "REPORT", None)
    if report:
        terminalreporter.section("acceptance criteria")
        for line in report:
            terminalreporter.write_line(line)
