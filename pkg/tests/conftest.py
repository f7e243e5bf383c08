import random

import pytest

from genvamos import matroid


@pytest.fixture(scope="session")
def corpus():
    """Hypergraphs with 2n <= 12: named examples plus seeded random ones."""
    rng = random.Random(20240611)
    out = [matroid.diamond(), matroid.burton_cycle(5), matroid.dfz_hypergraph(),
           matroid.complete_hypergraph(6, 3), matroid.empty_hypergraph(4), matroid.empty_hypergraph(5, 3)]
    while len(out) < 34:
        n = rng.randint(3, 6)
        d = rng.randint(2, n - 1)
        out.append(matroid.random_hypergraph(rng, n, d, p=rng.choice([0.2, 0.5, 0.8])))
    return out


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for i in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[i])
