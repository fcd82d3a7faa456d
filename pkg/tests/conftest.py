import pytest

from facial_thue.plane_graph import build_graph, generate

ACCEPTANCE_LINES: list[str] = []


def family_graph(kind, *params):
    return build_graph(generate(kind, *params))


def small_families(max_edges=30):
    """Every family instance with at most ``max_edges`` edges."""
    out = [("path", n) for n in range(2, max_edges + 2)]
    out += [("cycle", n) for n in range(3, max_edges + 1)]
    out += [("wheel", n) for n in range(3, max_edges // 2 + 1)]
    for a in range(2, max_edges):
        for b in range(2, max_edges):
            if a * (b - 1) + b * (a - 1) <= max_edges:
                out.append(("grid", a, b))
    return out


@pytest.fixture
def p3():
    return family_graph("path", 3)


@pytest.fixture
def p4():
    return family_graph("path", 4)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
