import pytest

from toomcook.params import validate

BIG_POINTS = [10**10 + j for j in range(5)]

ACCEPTANCE_CONFIGS = {
    "k2": (10, 2, 2, [0, 1, -1]),
    "k3": (10, 3, 3, [0, 1, -1, 2, -2]),
    "k2x3": (10, 2, 3, [0, 1, -1, 2]),
    "k3_big_points": (10, 3, 3, BIG_POINTS),
    "k3_base65536": (2**16, 3, 3, [0, 1, -1, 2, -2]),
}


@pytest.fixture
def toom3():
    return validate(10, 3, 3, [0, 1, -1, 2, -2])


@pytest.fixture
def toom3_big():
    return validate(10, 3, 3, BIG_POINTS)


@pytest.fixture
def toom2():
    return validate(10, 2, 2, [0, 1, -1])


@pytest.fixture(params=sorted(ACCEPTANCE_CONFIGS), ids=str)
def any_config(request):
    return validate(*ACCEPTANCE_CONFIGS[request.param])


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for criterion in sorted(RESULTS):
        parts = RESULTS[criterion]
        ok = all(p for p, _ in parts.values())
        tr.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {criterion}")
        for key, (p, detail) in parts.items():
            tr.write_line(f"        {'ok ' if p else 'BAD'} {key}: {detail}")
