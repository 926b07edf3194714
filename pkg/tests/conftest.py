from pathlib import Path

import pytest

from wellcover.graph import Graph

DATA = Path(__file__).parent / "data"

_ACCEPTANCE: dict[str, tuple[bool, str]] = {}


def S(*labels: int) -> int:
    """Vertex mask from 1-based labels, matching the figures."""
    mask = 0
    for v in labels:
        mask |= 1 << (v - 1)
    return mask


def graph(n: int, edges: str) -> Graph:
    """``graph(6, "12 16 23")`` with single-digit 1-based labels."""
    return Graph.from_edges(n, [(int(e[0]) - 1, int(e[1]) - 1) for e in edges.split()])


G_A = graph(6, "12 16 23 24 34 45 56")
G_B = graph(6, "12 16 23 24 34 45 56 35")
G_C = graph(6, "12 16 23 24 34 45 56 35 15")
G_D = graph(6, "12 13 15 16 23 26 35 45 46")
C4 = Graph.cycle(4)
C5 = Graph.cycle(5)
C6 = Graph.cycle(6)
P3 = Graph.path(3)
P4 = Graph.path(4)
OCTAHEDRON = Graph.complete_multipartite([2, 2, 2])

FIXTURES = {
    "G_A": G_A, "G_B": G_B, "G_C": G_C, "G_D": G_D,
    "C4": C4, "C5": C5, "C6": C6, "P4": P4,
}


def record_acceptance(key: str, ok: bool, detail: str) -> None:
    _ACCEPTANCE[key] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE, key=lambda k: (int(k.rstrip("ab")), k)):
        ok, detail = _ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture
def data_dir() -> Path:
    return DATA
