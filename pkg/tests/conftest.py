import math
from pathlib import Path

import numpy as np
import pytest

from horw.graph import Graph, load_edge_list

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "data" / "fixtures"
DATASETS = ROOT / "data" / "datasets"

DATASET_NAMES = ("polbooks", "usair", "grid", "lastfm")


def fixture_path(name: str) -> Path:
    return FIXTURES / name


def load_fixture(name: str) -> Graph:
    return load_edge_list(fixture_path(name))


def dataset_path(name: str) -> Path:
    return DATASETS / f"{name}.txt"


def require_dataset(name: str) -> Path:
    path = dataset_path(name)
    if not path.is_file():
        pytest.skip(
            f"dataset {name!r} not present; run scripts/fetch_datasets.py "
            "(needs network access) to enable this check"
        )
    return path


def random_connected_graph(rng: np.random.Generator, n: int, extra: float = 0.5) -> Graph:
    """Random tree plus a Poisson-ish sprinkle of extra edges; connected by
    construction, deterministic for a seeded generator."""
    edges = set()
    for v in range(1, n):
        u = int(rng.integers(0, v))
        edges.add((u, v))
    n_extra = int(extra * n)
    for _ in range(n_extra):
        u, v = (int(x) for x in rng.integers(0, n, 2))
        if u != v:
            edges.add((min(u, v), max(u, v)))
    return Graph(n, sorted(edges))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)


@pytest.fixture
def k3() -> Graph:
    return Graph(3, [(0, 1), (0, 2), (1, 2)], labels=["a", "b", "c"])


@pytest.fixture
def p3() -> Graph:
    # path a - b - c, center index 1
    return Graph(3, [(0, 1), (1, 2)], labels=["a", "b", "c"])


@pytest.fixture
def k4() -> Graph:
    return Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


@pytest.fixture
def toy() -> Graph:
    return load_fixture("toy.txt")


def assert_columns_stochastic(matrix, tol: float = 1e-12) -> None:
    sums = np.asarray(matrix.sum(axis=0)).ravel()
    assert np.abs(sums - 1.0).max() < tol, f"column sums off by {np.abs(sums-1).max():.2e}"


def dense_stationary(M) -> np.ndarray:
    """Oracle: eigenvalue-1 eigenvector of a column-stochastic matrix via a
    dense eigendecomposition, normalized to a distribution."""
    vals, vecs = np.linalg.eig(M.toarray() if hasattr(M, "toarray") else np.asarray(M))
    k = int(np.argmin(np.abs(vals - 1.0)))
    v = np.real(vecs[:, k])
    v = np.abs(v)
    return v / v.sum()


def pooled_sem(a: np.ndarray, b: np.ndarray) -> float:
    va = a.std(ddof=1) ** 2 / len(a)
    vb = b.std(ddof=1) ** 2 / len(b)
    return math.sqrt(va + vb)
