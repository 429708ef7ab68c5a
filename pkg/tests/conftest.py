import time
from contextlib import contextmanager

from hypothesis import settings

settings.register_profile("default", deadline=None)
settings.load_profile("default")

ACCEPTANCE: list = []


@contextmanager
def criterion(number, title, budget):
    """Time a criterion block and record one PASS/FAIL line for the summary."""
    t0 = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        ACCEPTANCE.append((number, title, False, time.perf_counter() - t0, budget, f"{type(exc).__name__}: {exc}"))
        raise
    elapsed = time.perf_counter() - t0
    ok = elapsed < budget
    ACCEPTANCE.append((number, title, ok, elapsed, budget, "" if ok else "runtime budget exceeded"))
    assert ok, f"criterion {number} took {elapsed:.2f}s, budget {budget}s"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, elapsed, budget, why in sorted(ACCEPTANCE):
        line = f"{'PASS' if ok else 'FAIL'} [{number:2d}] {title} ({elapsed:.2f}s < {budget}s)"
        if why:
            line += f" -- {why}"
        terminalreporter.write_line(line)
