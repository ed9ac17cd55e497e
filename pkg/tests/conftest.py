import sys

from hypothesis import settings

# Wall-clock deadlines are flaky on loaded machines; example counts stay
# modest so the property tests do not dominate the suite.
settings.register_profile("suite", deadline=None, max_examples=50)
settings.load_profile("suite")


def pytest_terminal_summary(terminalreporter):
    # Acceptance pass/fail lines are printed under capture; repeat them
    # where they are always visible.
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.write_line("")
    for line in results:
        terminalreporter.write_line(line)
