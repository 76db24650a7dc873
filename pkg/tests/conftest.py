import time

import pytest

from suzukicoh import verify
from suzukicoh.suzuki_ff import CurveParams

_CRITERIA = {}


@pytest.fixture(scope="session")
def criterion():
    """Recorder so the acceptance suite prints one line per criterion."""

    def record(num, description, passed):
        _CRITERIA[num] = (description, bool(passed))
        assert passed, "acceptance criterion %d failed: %s" % (num, description)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for num in sorted(_CRITERIA):
        desc, passed = _CRITERIA[num]
        terminalreporter.write_line(
            "criterion %2d: %s - %s" % (num, "PASS" if passed else "FAIL", desc)
        )


@pytest.fixture(scope="session")
def params1():
    return CurveParams(1)


@pytest.fixture(scope="session")
def params2():
    return CurveParams(2)


@pytest.fixture(scope="session")
def params3():
    return CurveParams(3)


def _timed_context(m):
    t0 = time.time()
    ctx = verify.build_context(m)
    ctx["build_seconds"] = time.time() - t0
    return ctx


@pytest.fixture(scope="session")
def ctx1():
    return _timed_context(1)


@pytest.fixture(scope="session")
def ctx2():
    return _timed_context(2)


@pytest.fixture(scope="session")
def ctx3():
    return _timed_context(3)
