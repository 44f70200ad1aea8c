import sys


def pytest_terminal_summary(terminalreporter):
    module = next((m for n, m in list(sys.modules.items()) if n.rsplit(".", 1)[-1] == "test_acceptance"), None)
    lines = module.summary_lines() if module else []
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
