
def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    if not test_acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(test_acceptance.RESULTS):
        terminalreporter.write_line(test_acceptance.RESULTS[n])
