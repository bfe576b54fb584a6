import pytest

from genuszero.trees import StableTree

_ACCEPTANCE_LINES = []


def two_vertex(left, right):
    """One-edge tree with tails ``left`` on vertex 0 and ``right`` on vertex 1."""
    tails = {label: 0 for label in left}
    tails.update({label: 1 for label in right})
    return StableTree([0, 1], [[0, 1]], tails)


def caterpillar(labels):
    """Trivalent path-shaped tree: two tails at each end, one at each inner vertex."""
    labels = list(labels)
    k = len(labels) - 2
    tails = {labels[0]: 0, labels[1]: 0}
    for i, label in enumerate(labels[2:-2], start=1):
        tails[label] = i
    tails[labels[-2]] = k - 1
    tails[labels[-1]] = k - 1
    return StableTree(range(k), [[i, i + 1] for i in range(k - 1)], tails)


@pytest.fixture
def criterion():
    def record(number, ok, detail):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        _ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
