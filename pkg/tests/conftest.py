from hypothesis import HealthCheck, settings

settings.register_profile(
    "repo",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

EXAMPLE_REF = "FOR OLDER KIDS THAT CAN BE THE SAME WE DO IT AS ADULTS".split()
EXAMPLE_HYP = (
    "FOR OLDER KIDS THAT CAN BE THE SAME WAY WE DO IT AS ADULTS "
    "FOR MORE INFORMATION VISIT WWW DOT FEMA DOT GOV"
).split()

# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
