import numpy as np
import pytest

from src.netgraph import (
    NetGraph,
    annulus,
    ball,
    build_graph,
    check_bounded_degree,
    check_llc,
    estimate_volume_growth,
    graph_metric,
    greedy_5b_cover,
    load_graph,
    model_graph,
    save_graph,
)
from src.scaling import PowerScaling
from src.spaces import NetSpec, PointCloud, extract_epsnet, generate_space
from src.utils.exceptions import InputError

from conftest import make_path


def _line(points, eps):
    cloud = PointCloud(np.asarray(points, dtype=float)[:, None], 'interval', len(points) - 1, 1.0, 1.0)
    net = extract_epsnet(cloud, NetSpec(eps, seed=None))
    return build_graph(cloud, net, eps, PowerScaling(1.0, 1.0, 'volume'), PowerScaling(2.0, 1.0, 'walk'))


def test_edge_rule():
    assert _line([0.0, 2.0], 1.0).m == 1
    assert _line([0.0, 3.0], 1.0).m == 0


def test_single_vertex_degree():
    assert check_bounded_degree(_line([0.0], 1.0)) == 0


def test_line_degree_four():
    graph = _line(np.arange(12.0), 0.99)
    assert check_bounded_degree(graph) == 4


def test_carpet_degree_scale_independent():
    degrees = {check_bounded_degree(model_graph('carpet', level)) for level in (3, 4)}
    assert len(degrees) == 1


def test_graph_metric_and_balls(path5):
    d = graph_metric(path5, 0)
    np.testing.assert_allclose(d, [0, 1, 2, 3, 4])
    np.testing.assert_array_equal(ball(path5, 2, 0.5), [2])
    np.testing.assert_array_equal(ball(path5, 2, 1.5), [1, 2, 3])
    np.testing.assert_array_equal(annulus(path5, 0, 1.0, 3.5), [2, 3])


def test_intrinsic_dominates_euclidean(carpet3):
    x = carpet3.nearest_vertex([0.5, 1.0 / 6.0])
    d_int = graph_metric(carpet3, x)
    d_euc = np.linalg.norm(carpet3.coords - carpet3.coords[x], axis=1)
    assert np.all(d_int >= d_euc - 1e-12)


def test_graph_metric_unknown_vertex(path5):
    with pytest.raises(InputError):
        graph_metric(path5, 17)


def test_5b_cover_trivial_cases(path5):
    assert greedy_5b_cover(path5, [(2, 1.0)]) == [0]
    assert sorted(greedy_5b_cover(path5, [(0, 1.0), (4, 1.0)])) == [0, 1]


def test_5b_cover_random_family(carpet3):
    rng = np.random.default_rng(7)
    balls = [(int(rng.integers(carpet3.n)), float(rng.uniform(0.05, 0.2))) for _ in range(10)]
    selected = greedy_5b_cover(carpet3, balls)
    for a in selected:
        d = graph_metric(carpet3, balls[a][0])
        for b in selected:
            if a != b:
                assert d[balls[b][0]] >= balls[a][1] + balls[b][1]
    for center, r in balls:
        members = ball(carpet3, center, r)
        assert any(set(members) <= set(ball(carpet3, balls[s][0], 5 * balls[s][1])) for s in selected)


def test_llc_lattice_and_interval():
    lattice = model_graph('lattice2d', 40)
    x = lattice.nearest_vertex([0.5, 0.5])
    assert check_llc(lattice, x, 8 * lattice.epsilon, 2.0)
    interval = model_graph('interval', 200)
    assert not check_llc(interval, interval.nearest_vertex([0.5]), 0.2, 2.0)


@pytest.mark.slow
def test_llc_carpet_level4():
    carpet = model_graph('carpet', 4)
    assert check_llc(carpet, carpet.nearest_vertex([0.5, 1.0 / 6.0]), 0.25, 3.0)


def test_volume_growth_interval():
    graph = model_graph('interval', 400)
    report = estimate_volume_growth(graph, graph.nearest_vertex([0.5]), [0.05, 0.1, 0.2])
    assert report.d_h_hat == pytest.approx(1.0, abs=0.05)
    assert report.doubling_hat == pytest.approx(2.0, abs=0.1)


def test_cache_round_trip(tmp_path, carpet2):
    path = tmp_path / 'g.json'
    save_graph(carpet2, str(path))
    loaded = load_graph(str(path))
    np.testing.assert_allclose(loaded.coords, carpet2.coords)
    np.testing.assert_array_equal(loaded.edges, carpet2.edges)
    assert loaded.epsilon == carpet2.epsilon
    assert loaded.psi == carpet2.psi


def test_cache_is_byte_stable(tmp_path, carpet2):
    a, b = tmp_path / 'a.json', tmp_path / 'b.json'
    save_graph(carpet2, str(a))
    save_graph(load_graph(str(a)), str(b))
    assert a.read_bytes() == b.read_bytes()


def test_load_missing_graph(tmp_path):
    with pytest.raises(InputError):
        load_graph(str(tmp_path / 'absent.json'))


def test_from_edges_defaults():
    graph = make_path(3, epsilon=0.5)
    assert graph.conductance_factor == pytest.approx(1.0)
    assert graph.vertex_mass == pytest.approx(0.5)
    assert isinstance(graph, NetGraph) and graph.connected


def test_model_graph_carpet_level3():
    graph = model_graph('carpet', 3, epsilon=0.037037)
    assert graph.n == 512
    assert graph.connected
    assert len(generate_space('carpet', 3)) == graph.n


def test_distance_cache_evicts_least_recent(monkeypatch):
    monkeypatch.setattr('src.netgraph.graph.DISTANCE_CACHE_SIZE', 4)
    graph = make_path(50)
    for v in range(4):
        graph.intrinsic_distances(v)
    graph.intrinsic_distances(0)
    graph.intrinsic_distances(10)
    assert graph.cached_sources == 4
    assert list(graph._distance_cache) == [2, 3, 0, 10]
    for v in range(50):
        graph_metric(graph, v)
    assert graph.cached_sources == 4
    assert graph_metric(graph, 7)[20] == pytest.approx(13.0)


def test_distance_rows_by_chunk_match_single_sources():
    graph = make_path(20)
    blocks = list(graph.iter_distance_rows(range(20), chunk=6))
    assert [block.size for block, _ in blocks] == [6, 6, 6, 2]
    rows = np.vstack([rows for _, rows in blocks])
    np.testing.assert_allclose(rows[3], graph_metric(graph, 3))
    assert graph.cached_sources == 1
