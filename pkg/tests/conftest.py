import numpy as np
import pytest

from poscub import make_ball, make_cube, union


@pytest.fixture
def square():
    return make_cube([0.0, 0.0], 1.0)


@pytest.fixture
def disk():
    return make_ball([0.0, 0.0], 1.0)


@pytest.fixture
def ball3():
    return make_ball([0.0, 0.0, 0.0], 1.0)


@pytest.fixture
def disk_and_square():
    """Unit disk plus the square [1, 2]^2; the two touch nowhere."""
    return union(make_ball([0.0, 0.0], 1.0), make_cube([1.5, 1.5], 0.5), disjoint=True)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def acceptance_report(request):
    """Record a ``CRITERION n: PASS|FAIL`` line; all lines are printed in the terminal summary."""
    lines = request.config.stash.setdefault(_ACCEPTANCE, [])

    def _report(n, ok, detail=""):
        lines.append(f"CRITERION {n}: {'PASS' if ok else 'FAIL'}" + (f"  {detail}" if detail else ""))
        return ok

    return _report


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
