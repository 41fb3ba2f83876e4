import itertools
import math

import numpy as np
import pytest

from nfmimo.errors import InvalidArgumentError, InvalidGeometryError
from nfmimo.geometry import (
    ORIGIN,
    ArrayGeometry,
    LinkGeometry,
    Point3,
    build_upa,
    cross_distances,
    min_cross_distance,
    rotate_about_z,
    rotation_clearance,
)


def brute_force_min_cross(tx, rx):
    # Independent O(n^2) scan, no vectorization.
    return min(
        math.dist(a, b)
        for a, b in itertools.product(tx.elements.tolist(), rx.elements.tolist())
    )


def test_2x2_grid_endpoint_inclusive():
    arr = build_upa(10, 10, 2, 2, ORIGIN, 0.0)
    expected = {(-5.0, 0.0, -5.0), (-5.0, 0.0, 5.0), (5.0, 0.0, -5.0), (5.0, 0.0, 5.0)}
    got = {tuple(p) for p in arr.elements}
    assert got == expected


def test_2x2_grid_rotated_90_maps_x_to_y():
    arr = build_upa(10, 10, 2, 2, ORIGIN, 90.0)
    expected = np.array(
        [[0.0, -5.0, -5.0], [0.0, -5.0, 5.0], [0.0, 5.0, -5.0], [0.0, 5.0, 5.0]]
    )
    np.testing.assert_allclose(arr.elements, expected, atol=1e-12)


def test_shape_study_array_count_and_bounding_box():
    arr = build_upa(12, 12, 12, 12, Point3(0, 10, 0), 0.0)
    assert arr.n_elements == 144
    assert len(arr.elements) == 144
    spans = arr.elements.max(axis=0) - arr.elements.min(axis=0)
    np.testing.assert_allclose(spans, [12.0, 0.0, 12.0], atol=1e-12)
    np.testing.assert_allclose(arr.elements.mean(axis=0), [0.0, 10.0, 0.0], atol=1e-12)


def test_row_major_ordering_is_deterministic():
    arr = build_upa(4, 6, 3, 4, ORIGIN, 0.0)
    # element i*ny + j: first axis index i varies slowest
    assert arr.elements[0][0] == arr.elements[3][0] == -2.0
    assert arr.elements[4][0] == 0.0
    np.testing.assert_array_equal(arr.elements, build_upa(4, 6, 3, 4, ORIGIN, 0.0).elements)


def test_single_element_axis_sits_on_center_line():
    arr = build_upa(3, 8, 1, 5, ORIGIN, 0.0)
    assert np.all(arr.elements[:, 0] == 0.0)


@pytest.mark.parametrize("nx,ny", [(2, 2), (3, 7), (11, 11)])
def test_bounding_box_matches_aperture(nx, ny):
    arr = build_upa(10, 6, nx, ny, ORIGIN, 0.0)
    assert arr.n_elements == nx * ny
    spans = arr.elements.max(axis=0) - arr.elements.min(axis=0)
    assert abs(spans[0] - 10) < 1e-12
    assert abs(spans[2] - 6) < 1e-12


def test_unrotated_array_lies_in_y_plane():
    arr = build_upa(5, 5, 4, 4, Point3(1.0, 2.5, -3.0), 0.0)
    assert np.all(arr.elements[:, 1] == 2.5)


def test_rotation_zero_is_identity():
    base = build_upa(10, 10, 11, 11, Point3(0, 30, 0), 0.0)
    rot = build_upa(10, 10, 11, 11, Point3(0, 30, 0), 0.0)
    assert np.abs(base.elements - rot.elements).max() < 1e-12


def test_rotate_then_unrotate_restores_positions():
    pts = build_upa(10, 10, 5, 5, Point3(2, 7, 1), 0.0).elements
    for theta in (13.0, 45.0, 89.0):
        back = rotate_about_z(rotate_about_z(pts, theta, Point3(2, 7, 1)), -theta, Point3(2, 7, 1))
        assert np.abs(back - pts).max() < 1e-10


def test_cross_distance_multiset_is_even_in_rotation():
    tx = build_upa(10, 10, 5, 5, ORIGIN, 0.0)
    for theta in (10.0, 30.0, 60.0):
        rx_pos = build_upa(10, 10, 5, 5, Point3(0, 30, 0), theta)
        rx_neg = build_upa(10, 10, 5, 5, Point3(0, 30, 0), -theta)
        d_pos = np.sort(cross_distances(tx.elements, rx_pos.elements), axis=None)
        d_neg = np.sort(cross_distances(tx.elements, rx_neg.elements), axis=None)
        np.testing.assert_allclose(d_pos, d_neg, rtol=1e-12)


def test_invalid_sides_and_counts_rejected():
    with pytest.raises(InvalidGeometryError):
        build_upa(0, 10, 2, 2)
    with pytest.raises(InvalidGeometryError):
        build_upa(10, -1, 2, 2)
    with pytest.raises(InvalidGeometryError):
        build_upa(10, 10, 0, 2)


def test_duplicate_positions_rejected():
    pts = np.zeros((4, 3))
    with pytest.raises(InvalidGeometryError):
        ArrayGeometry(
            elements=pts, side_a=1, side_b=1, nx=2, ny=2, center=ORIGIN, rotation_deg=0.0
        )


def test_clearance_examples():
    # 10*sin(60 deg)/2 = 4.33 > 4
    assert rotation_clearance(10, 60, 4) is False
    assert rotation_clearance(10, 0, 4) is True
    # 10*0.8/2 = 4 <= 30
    assert rotation_clearance(10, 53.13, 30) is True


def test_clearance_true_at_zero_rotation_for_any_clear_distance():
    for d in (0.06, 0.1, 1.0, 1e4):
        assert rotation_clearance(10, 0.0, d) is True
    # inside the margin itself the link is rejected
    assert rotation_clearance(10, 0.0, 0.049) is False


def test_clearance_margin_is_configurable():
    assert rotation_clearance(10, 60, 4.35, epsilon_clear=0.0) is True
    assert rotation_clearance(10, 60, 4.35, epsilon_clear=0.05) is False


def test_clearance_rejects_out_of_range_arguments():
    with pytest.raises(InvalidArgumentError):
        rotation_clearance(-1, 0, 4)
    with pytest.raises(InvalidArgumentError):
        rotation_clearance(10, 91, 4)
    with pytest.raises(InvalidArgumentError):
        rotation_clearance(10, -5, 4)
    with pytest.raises(InvalidArgumentError):
        rotation_clearance(10, 0, 0)


def test_min_cross_distance_single_pair():
    tx = build_upa(1, 1, 1, 1, ORIGIN, 0.0)
    rx = build_upa(1, 1, 1, 1, Point3(0, 4, 0), 0.0)
    link = LinkGeometry.between(tx, rx)
    assert min_cross_distance(link) == pytest.approx(4.0, abs=1e-15)


def test_min_cross_distance_parallel_aligned_arrays():
    tx = build_upa(10, 10, 11, 11, ORIGIN, 0.0)
    rx = build_upa(10, 10, 11, 11, Point3(0, 30, 0), 0.0)
    link = LinkGeometry.between(tx, rx)
    got = min_cross_distance(link)
    # aligned equal-size parallel planes: closest pairs sit face to face
    assert got == pytest.approx(30.0, rel=1e-15)
    assert got == pytest.approx(brute_force_min_cross(tx, rx), rel=1e-12)


def test_min_cross_distance_near_touching_rotation():
    # At theta=53.13 deg and d=4 the rotated receiver edge reaches the
    # transmitter plane; the pair scan must flag the near-contact.
    tx = build_upa(10, 10, 11, 11, ORIGIN, 0.0)
    rx = build_upa(10, 10, 11, 11, Point3(0, 4, 0), 53.13)
    link = LinkGeometry.between(tx, rx)
    got = min_cross_distance(link)
    assert got == pytest.approx(brute_force_min_cross(tx, rx), rel=1e-12)
    assert got <= 0.01 * 10
    assert not rotation_clearance(10, 53.13, 4)


def test_link_distance_must_match_centers():
    tx = build_upa(2, 2, 2, 2, ORIGIN, 0.0)
    rx = build_upa(2, 2, 2, 2, Point3(0, 5, 0), 0.0)
    with pytest.raises(InvalidGeometryError):
        LinkGeometry(tx=tx, rx=rx, distance=4.0)
    link = LinkGeometry.between(tx, rx)
    assert link.distance == pytest.approx(5.0, rel=1e-15)


def test_link_rejects_overlapping_arrays():
    tx = build_upa(2, 2, 2, 2, ORIGIN, 0.0)
    with pytest.raises(InvalidGeometryError):
        LinkGeometry(tx=tx, rx=tx, distance=1.0)


def test_point_rejects_non_finite():
    with pytest.raises(InvalidGeometryError):
        Point3(0.0, math.nan, 0.0)
    with pytest.raises(InvalidGeometryError):
        Point3(math.inf, 0.0, 0.0)
