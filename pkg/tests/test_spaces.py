import numpy as np
import pytest

from src.spaces import NetSpec, PointCloud, expected_count, extract_epsnet, generate_space
from src.utils.exceptions import DomainError, InputError


def test_carpet_level1_cells():
    cloud = generate_space('carpet', 1)
    expected = {((i + 0.5) / 3, (j + 0.5) / 3) for i in range(3) for j in range(3) if (i, j) != (1, 1)}
    got = {tuple(np.round(p, 12)) for p in cloud.points}
    assert got == {tuple(np.round(p, 12)) for p in expected}


def test_interval_points():
    cloud = generate_space('interval', 4)
    np.testing.assert_allclose(cloud.points[:, 0], [0.0, 0.25, 0.5, 0.75, 1.0])


def test_carpet_level3_count_and_grid():
    cloud = generate_space('carpet', 3)
    assert len(cloud) == 512 == expected_count('carpet', 3)
    k = cloud.points * 27 - 0.5
    np.testing.assert_allclose(k, np.round(k), atol=1e-9)
    # aucune cellule centrale à aucun niveau
    digits = np.round(k).astype(int)
    for level in range(3):
        d = (digits // 3 ** level) % 3
        assert not np.any((d[:, 0] == 1) & (d[:, 1] == 1))


def test_gasket_count():
    assert len(generate_space('gasket', 4)) == 81


def test_unknown_kind():
    with pytest.raises(InputError):
        generate_space('sphere', 2)


def test_epsnet_line_example():
    cloud = PointCloud(np.array([[0.0], [0.5], [1.0]]), 'interval', 2, 1.0, 1.0)
    net = extract_epsnet(cloud, NetSpec(0.6, seed=None))
    np.testing.assert_array_equal(net, [0, 2])


def test_epsnet_keeps_everything_below_min_distance():
    cloud = generate_space('interval', 10)
    net = extract_epsnet(cloud, NetSpec(0.05))
    assert net.size == len(cloud)


def test_epsnet_carpet_level3_keeps_all_cells():
    cloud = generate_space('carpet', 3)
    net = extract_epsnet(cloud, NetSpec(3.0 ** -3, seed=None))
    assert net.size == 512


def test_epsnet_is_separated_and_covering():
    cloud = generate_space('lattice2d', 12)
    eps = 0.21
    net = extract_epsnet(cloud, NetSpec(eps, seed=3))
    pts = cloud.points[net]
    d = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=2)
    np.fill_diagonal(d, np.inf)
    assert d.min() >= eps * (1 - 1e-9)
    cover = np.linalg.norm(cloud.points[:, None, :] - pts[None, :, :], axis=2).min(axis=1)
    assert cover.max() < eps


def test_netspec_rejects_nonpositive_epsilon():
    with pytest.raises(DomainError):
        NetSpec(0.0)
