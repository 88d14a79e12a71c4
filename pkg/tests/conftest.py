import numpy as np
import pytest

from wavenet.core import NetworkGraph, Port, Segment


def random_network(rng: np.random.Generator, max_nodes: int = 6) -> NetworkGraph:
    """Connected random network of lossless segments with 1-4 ports."""
    n = int(rng.integers(1, max_nodes + 1))
    nodes = [f"n{i}" for i in range(n)]
    segments = []
    # spanning tree first, then a few extra edges (possibly parallel / self loops)
    for i in range(1, n):
        j = int(rng.integers(0, i))
        segments.append((nodes[j], nodes[i]))
    for _ in range(int(rng.integers(0, n + 1))):
        a, b = rng.integers(0, n, size=2)
        segments.append((nodes[a], nodes[b]))
    segs = [
        Segment(f"s{i}", a, b, float(rng.uniform(0.3, 3.0)), float(rng.uniform(0.2, 2.5)))
        for i, (a, b) in enumerate(segments)
    ]
    nports = int(rng.integers(1, 5))
    ports = [
        Port(f"p{i}", nodes[int(rng.integers(0, n))], float(rng.uniform(0.3, 3.0)))
        for i in range(nports)
    ]
    return NetworkGraph(nodes, segs, ports)


def segment_only(rng: np.random.Generator):
    return random_network(rng), float(rng.uniform(0.1, 6.0))


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.REPORT:
        terminalreporter.section("acceptance criteria")
        for line in mod.REPORT:
            terminalreporter.write_line(line)
