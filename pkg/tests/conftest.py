import numpy as np
import pytest

from signedsbm import SignedGraph, sample_raw

_ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture
def record():
    """Record one acceptance criterion outcome for the terminal summary."""

    def _record(name: str, passed: bool, detail: str = "") -> bool:
        _ACCEPTANCE.append((name, bool(passed), detail))
        print(f"{'PASS' if passed else 'FAIL'} {name}: {detail}")
        return passed

    return _record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}")


@pytest.fixture
def noiseless4():
    """n=4: positive edges inside {0,1} and {2,3}, negative edges across."""
    g, truth = sample_raw(4, 1, 0, 0, 1, seed=0)
    return g, truth.labels


def random_graph(n: int, seed: int, density: float = 0.4) -> SignedGraph:
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, 1)
    r = rng.random(iu.size)
    keep = r < density
    sign = np.where(r[keep] < density / 2, 1, -1)
    return SignedGraph.from_arrays(n, iu[keep], ju[keep], sign)


def dense_layers(g: SignedGraph) -> tuple[np.ndarray, np.ndarray]:
    """Dense A+ and A- built from the edge list, independent of the CSR path."""
    ap = np.zeros((g.n, g.n))
    an = np.zeros((g.n, g.n))
    for u, v, s in g.edges():
        target = ap if s > 0 else an
        target[u, v] = target[v, u] = 1
    return ap, an


def dense_w(g: SignedGraph, xi: float) -> np.ndarray:
    ap, an = dense_layers(g)
    at = ap - xi * an
    rho = at.sum() / g.n ** 2
    return at - rho * np.ones((g.n, g.n))
