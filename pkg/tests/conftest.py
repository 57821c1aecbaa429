"""
Fixtures partagées: petits graphes chemins, boîte de réseau et tapis de Sierpiński.
"""

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.netgraph import NetGraph, model_graph  # noqa: E402
from src.penergy import SolverOptions  # noqa: E402


def make_path(vertices: int, epsilon: float = 1.0) -> NetGraph:
    """Chemin 0-1-...-(vertices-1), facteur de conductance 1."""
    return NetGraph.from_edges(vertices, [(k, k + 1) for k in range(vertices - 1)], epsilon=epsilon)


@pytest.fixture
def path5():
    return make_path(5)


@pytest.fixture(scope='session')
def lattice():
    return model_graph('lattice2d', 20)


@pytest.fixture(scope='session')
def carpet2():
    return model_graph('carpet', 2)


@pytest.fixture(scope='session')
def carpet3():
    return model_graph('carpet', 3)


@pytest.fixture
def opts():
    return SolverOptions()


@pytest.fixture(autouse=True)
def output_dir(tmp_path, monkeypatch):
    monkeypatch.setenv('POTENTIEL_OUTPUT_DIR', str(tmp_path / 'output'))
    return tmp_path / 'output'
