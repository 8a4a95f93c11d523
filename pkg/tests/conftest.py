def pytest_terminal_summary(terminalreporter, exitstatus, config):
    import sys
    test_acceptance = sys.modules.get("test_acceptance") \
        or sys.modules.get("tests.test_acceptance")
    if test_acceptance is None or not test_acceptance.RESULT_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in test_acceptance.RESULT_LINES:
        terminalreporter.write_line(line)
