import hypothesis
import pytest

from treecenter.tree import path_tree

hypothesis.settings.register_profile("ci", max_examples=60, deadline=None)
hypothesis.settings.register_profile("thorough", max_examples=500, deadline=None)
hypothesis.settings.load_profile("ci")


@pytest.fixture
def path3():
    """v1 -4- v2 -4- v3, unit weights, rooted at v1."""
    return path_tree([1, 1, 1], [4, 4])


@pytest.fixture
def weighted_path3():
    """v1(1) -3- v2(2) -3- v3(1)."""
    return path_tree([1, 2, 1], [3, 3])


def pytest_terminal_summary(terminalreporter):
    from helpers import ACCEPTANCE

    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(ACCEPTANCE, key=lambda k: int(k.split()[0][1:])):
        ok, detail = ACCEPTANCE[label]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} {label}: {detail}")
