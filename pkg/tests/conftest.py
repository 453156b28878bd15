from functools import lru_cache

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("voakit", deadline=None, derandomize=True, print_blob=True,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("voakit")


@lru_cache(maxsize=None)
def preset(name):
    from voakit.presets import build, parse_preset
    return build(parse_preset(name))


@pytest.fixture
def ctx():
    return preset


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
