import sys
from pathlib import Path

from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

# Every property suite runs at least 200 derandomized (fixed-seed) cases.
settings.register_profile(
    "fixed",
    max_examples=200,
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much,
                           HealthCheck.data_too_large],
)
settings.load_profile("fixed")


def pytest_terminal_summary(terminalreporter):
    import support

    if support.ACCEPTANCE:
        terminalreporter.section("acceptance")
        for n in sorted(support.ACCEPTANCE):
            terminalreporter.write_line(support.ACCEPTANCE[n].splitlines()[0])
