import os
import sys
from pathlib import Path

from hypothesis import HealthCheck, settings

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.large_base_example])
settings.register_profile("quick", parent=settings.get_profile("default"), max_examples=20)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


class DrawRng:
    """Adapts hypothesis ``data.draw`` to the randint/choice interface of the case generators."""

    def __init__(self, data):
        from hypothesis import strategies as st
        self._data = data
        self._st = st

    def randint(self, a, b):
        return self._data.draw(self._st.integers(a, b))

    def choice(self, seq):
        seq = list(seq)
        return seq[self._data.draw(self._st.integers(0, len(seq) - 1))]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
