import itertools

import networkx as nx
import numpy as np
import pytest

from src.capacity import CondenserSpec
from src.modulus import (
    ModulusOptions,
    brute_modulus,
    check_mod_cap_comparability,
    enumerate_plate_paths,
    p_modulus,
    path_length,
    rho_shortest_path,
)
from src.netgraph import NetGraph
from src.utils.exceptions import DomainError, InputError, ResourceError

from conftest import make_path


def _spec(a0, a1, a2=None):
    return CondenserSpec(np.asarray(a0), np.asarray(a1), None if a2 is None else np.asarray(a2))


def _grid3():
    edges = []
    for i, j in itertools.product(range(3), range(3)):
        v = 3 * i + j
        if j < 2:
            edges.append((v, v + 1))
        if i < 2:
            edges.append((v, v + 3))
    return NetGraph.from_edges(9, edges)


def test_path_length_and_shortest_path():
    graph = make_path(3)
    rho = np.array([0.1, 0.5, 0.2])
    assert path_length(rho, [0, 1, 2]) == pytest.approx(0.8)
    path, length = rho_shortest_path(graph, rho, [0], [2])
    assert path == [0, 1, 2]
    assert length == pytest.approx(0.8)


def test_shortest_path_with_zero_density(path5):
    path, length = rho_shortest_path(path5, np.zeros(5), [0], [4])
    assert length == 0.0
    assert path[0] == 0 and path[-1] == 4


def test_shortest_path_matches_enumeration():
    graph = _grid3()
    rng = np.random.default_rng(11)
    rho = rng.uniform(0.1, 1.0, 9)
    rho[[1, 2, 5]] = 0.01
    G = nx.Graph([tuple(e) for e in graph.edges.tolist()])
    expected = min(path_length(rho, path) for path in nx.all_simple_paths(G, 0, 8))
    _, length = rho_shortest_path(graph, rho, [0], [8])
    assert length == pytest.approx(expected)


def test_shortest_path_none_when_disconnected():
    graph = NetGraph.from_edges(4, [(0, 1), (2, 3)])
    assert rho_shortest_path(graph, np.ones(4), [0], [3]) is None


def test_shortest_path_rejects_negative_density(path5):
    with pytest.raises(InputError):
        rho_shortest_path(path5, -np.ones(5), [0], [4])


@pytest.mark.parametrize('p', [1.5, 2.0, 3.0])
def test_single_path_modulus(path5, p):
    result = p_modulus(path5, _spec([0], [4]), p)
    assert result.value == pytest.approx(5.0 ** (1.0 - p), rel=1e-6)
    np.testing.assert_allclose(result.rho_star, 0.2, rtol=1e-5)
    assert result.admissibility_slack >= -1e-9
    assert result.lower_bound <= result.value + 1e-12


@pytest.mark.parametrize('p', [2.0, 3.0])
def test_two_disjoint_paths(p):
    graph = NetGraph.from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5)])
    result = p_modulus(graph, _spec([0, 3], [2, 5]), p)
    assert result.value == pytest.approx(2.0 * 3.0 ** (1.0 - p), rel=1e-6)
    assert brute_modulus(graph, _spec([0, 3], [2, 5]), p) == pytest.approx(result.value, abs=1e-6)


def test_four_cycle_opposite_corners():
    # les deux chemins partagent leurs extrémités: rho = (0.4, 0.2, 0.4, 0.2)
    graph = NetGraph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    spec = _spec([0], [2])
    assert len(enumerate_plate_paths(graph, spec)) == 2
    assert brute_modulus(graph, spec, 2.0) == pytest.approx(0.4, abs=1e-6)
    assert p_modulus(graph, spec, 2.0).value == pytest.approx(0.4, rel=1e-5)


@pytest.mark.parametrize('p', [1.5, 2.0, 3.0])
def test_k4_minus_edge_matches_oracle(p):
    graph = NetGraph.from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
    spec = _spec([0], [3])
    assert p_modulus(graph, spec, p).value == pytest.approx(brute_modulus(graph, spec, p), abs=1e-4)


def test_random_graphs_match_oracle():
    rng = np.random.default_rng(3)
    for trial in range(4):
        G = nx.connected_watts_strogatz_graph(9, 4, 0.3, seed=trial)
        graph = NetGraph.from_edges(9, list(G.edges))
        a0, a1 = rng.choice(9, size=2, replace=False)
        spec = _spec([a0], [a1])
        assert p_modulus(graph, spec, 2.0).value == pytest.approx(brute_modulus(graph, spec, 2.0), abs=1e-4)


def test_disconnected_plates_have_zero_modulus():
    graph = NetGraph.from_edges(4, [(0, 1), (2, 3)])
    spec = _spec([0], [3])
    assert p_modulus(graph, spec, 2.0).value == 0.0
    assert brute_modulus(graph, spec, 2.0) == 0.0


def test_modulus_is_p_homogeneous_in_unit(path5):
    base = p_modulus(path5, _spec([0], [4]), 2.0).value
    assert p_modulus(path5, _spec([0], [4]), 2.0, unit=2.0).value == pytest.approx(4.0 * base, rel=1e-6)


def test_modulus_monotone_in_ambient_set():
    graph = NetGraph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    full = p_modulus(graph, _spec([0], [2]), 2.0).value
    restricted = p_modulus(graph, _spec([0], [2], [0, 1, 2]), 2.0).value
    assert restricted <= full + 1e-9


def test_modulus_rejects_bad_exponent(path5):
    with pytest.raises(DomainError):
        p_modulus(path5, _spec([0], [4]), 1.0)


def test_brute_modulus_refuses_large_graphs():
    graph = make_path(13)
    with pytest.raises(ResourceError):
        brute_modulus(graph, _spec([0], [12]), 2.0)


def test_modulus_options_from_config():
    opts = ModulusOptions.from_config({'tol': 1e-4, 'unknown': 3})
    assert opts.tol == 1e-4
    assert opts.max_outer == 2000


def test_comparability_on_path(path5):
    report = check_mod_cap_comparability(path5, _spec([0], [4]), 2.0)
    assert report.ratio == pytest.approx(1.25, rel=1e-5)
    assert 1.0 <= report.ratio <= 2.0
    assert report.within and not report.degenerate


def test_comparability_degenerate_when_disconnected():
    graph = NetGraph.from_edges(4, [(0, 1), (2, 3)])
    report = check_mod_cap_comparability(graph, _spec([0], [3]), 2.0)
    assert report.degenerate
    assert np.isnan(report.ratio)
