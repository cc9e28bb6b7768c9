import time

import pytest

# criterion number -> (passed, detail, seconds)
_ACCEPTANCE: dict[int, tuple[bool, str, float]] = {}


class _Recorder:
    def __init__(self, number: int):
        self.number = number
        self.start = time.perf_counter()

    @property
    def elapsed(self) -> float:
        return time.perf_counter() - self.start

    def __call__(self, passed: bool, detail: str) -> None:
        _ACCEPTANCE[self.number] = (bool(passed), detail, self.elapsed)


@pytest.fixture
def criterion(request):
    number = request.node.get_closest_marker("criterion").args[0]
    return _Recorder(number)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        passed, detail, secs = _ACCEPTANCE[n]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'} criterion {n} ({secs:.2f}s): {detail}")
