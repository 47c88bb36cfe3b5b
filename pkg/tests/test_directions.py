import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multigrad.directions import (
    POLYHEDRA,
    DirectionSet,
    OrthonormalFrame,
    RotationMatrix,
    find_orthonormal_frames,
    parse_set_spec,
    polygon_set,
    polyhedron_set,
    random_rotation,
    rotate_set,
    rotation_2d,
    validate_set,
)
from multigrad.exceptions import DimensionError

COUNTS = dict(tetrahedron=4, octahedron=6, cube=8, icosahedron=12, dodecahedron=20,
              truncated_octahedron=24, soccer_ball=60)
R2 = math.sqrt(2) / 2


def brute_force_frame_count(vectors, tol=1e-9):
    """Independent oracle: count unordered sets of n mutually perpendicular lines.

    Works on raw vectors; each line appears as +v and possibly -v, so the
    count is taken over line labels built from a canonical rounding.
    """
    v = np.asarray(vectors)
    n = v.shape[1]
    labels = {}
    for u in v:
        key = tuple(np.round(u if u[np.argmax(np.abs(u) > 1e-9)] > 0 else -u, 9))
        labels.setdefault(key, u)
    lines = list(labels.values())
    return sum(
        1
        for combo in itertools.combinations(lines, n)
        if all(abs(float(a @ b)) <= tol for a, b in itertools.combinations(combo, 2))
    )


def as_set(a):
    return {tuple(np.round(r, 12)) for r in np.asarray(a)}


def test_polygon_half_4():
    s = polygon_set(4, "half")
    np.testing.assert_allclose(s.vectors, [(1, 0), (R2, R2), (0, 1), (-R2, R2)], atol=1e-15)
    assert not s.antipodal_closed


def test_polygon_full_4():
    np.testing.assert_allclose(polygon_set(4, "full").vectors, [(1, 0), (0, 1), (-1, 0), (0, -1)], atol=1e-15)


def test_triangle_centroid():
    s = polygon_set(3, "full")
    assert np.linalg.norm(s.vectors.sum(axis=0)) <= 1e-15
    assert not s.antipodal_closed


def test_polygon_errors():
    with pytest.raises(ValueError):
        polygon_set(1)
    with pytest.raises(ValueError):
        polygon_set(4, "quarter")


@pytest.mark.parametrize("name", POLYHEDRA)
def test_polyhedra_valid(name):
    s = polyhedron_set(name)
    r = validate_set(s)
    assert r.n_vectors == COUNTS[name]
    assert r.max_norm_residual <= 1e-12
    assert r.centroid_norm <= 1e-9
    assert s.antipodal_closed == (name != "tetrahedron")
    assert r.antipodal_closed == s.antipodal_closed


def test_octahedron_and_cube():
    assert as_set(polyhedron_set("octahedron").vectors) == as_set(np.vstack([np.eye(3), -np.eye(3)]))
    cube = np.array(list(itertools.product((1, -1), repeat=3))) / math.sqrt(3)
    assert as_set(polyhedron_set("cube").vectors) == as_set(cube)


def test_truncated_octahedron_by_enumeration():
    # oracle: integer points of norm^2 5 having a zero coordinate
    pts = [p for p in itertools.product(range(-2, 3), repeat=3)
           if sum(c * c for c in p) == 5 and 0 in p]
    assert len(pts) == 24
    assert all(sorted(map(abs, p)) == [0, 1, 2] for p in pts)
    assert as_set(polyhedron_set("truncated_octahedron").vectors) == as_set(np.array(pts) / math.sqrt(5))


def test_tetrahedron_inside_cube():
    cube = as_set(polyhedron_set("cube").vectors)
    assert as_set(polyhedron_set("tetrahedron").vectors) <= cube


def test_soccer_ball_is_vertex_transitive_enough():
    v = polyhedron_set("soccer_ball").vectors
    # every vertex has exactly three nearest neighbours at the same distance
    d = np.linalg.norm(v[:, None] - v[None], axis=2)
    np.fill_diagonal(d, np.inf)
    edge = d.min()
    assert np.all(np.sum(np.abs(d - edge) < 1e-9, axis=1) == 3)


def test_unknown_polyhedron():
    with pytest.raises(ValueError):
        polyhedron_set("rhombicuboctahedron")


def test_set_invariants_enforced():
    with pytest.raises(ValueError):
        DirectionSet.from_vectors([(1, 0), (2, 0)])
    with pytest.raises(ValueError):
        DirectionSet.from_vectors([(1, 0), (1, 0)])
    s = DirectionSet.from_vectors([(1, 0), (-1, 0)])
    assert s.antipodal_closed


def test_rotation_axioms():
    for dim in (2, 3):
        for seed in range(20):
            m = random_rotation(dim, seed).matrix
            assert np.abs(m.T @ m - np.eye(dim)).max() <= 1e-12
            assert abs(np.linalg.det(m) - 1) <= 1e-12
    with pytest.raises(DimensionError):
        random_rotation(4, 0)


def test_rotation_is_deterministic():
    assert np.array_equal(random_rotation(3, 42).matrix, random_rotation(3, 42).matrix)
    assert not np.array_equal(random_rotation(3, 42).matrix, random_rotation(3, 43).matrix)


def test_octahedron_angles_preserved():
    s = polyhedron_set("octahedron")
    for seed in range(10):
        v = rotate_set(s, random_rotation(3, seed)).vectors
        ang = np.degrees(np.arccos(np.clip(v @ v.T, -1, 1)))
        off = ang[~np.eye(6, dtype=bool)]
        assert np.all((np.abs(off - 90) < 1e-9) | (np.abs(off - 180) < 1e-6))


def test_haar_mean_of_rotated_axis():
    # Monte Carlo: the image of a fixed axis under Haar rotations has mean 0
    e1 = np.array([1.0, 0.0, 0.0])
    imgs = np.array([random_rotation(3, seed).apply(e1) for seed in range(10_000)])
    assert np.linalg.norm(imgs.mean(axis=0)) < 0.05
    # and each coordinate is uniform on [-1, 1] (Archimedes), so its variance is 1/3
    np.testing.assert_allclose(imgs.var(axis=0), 1 / 3, atol=0.02)


def test_rotate_identity_and_45():
    s = polygon_set(8, "half")
    ident = RotationMatrix(np.eye(2))
    np.testing.assert_array_equal(rotate_set(s, ident).vectors, s.vectors)
    r = rotate_set(polygon_set(4, "full"), rotation_2d(math.pi / 4))
    half = polygon_set(4, "half").vectors
    diag = half[[1, 3]]
    assert as_set(r.vectors) == as_set(np.vstack([diag, -diag]))


def test_rotate_dim_mismatch():
    with pytest.raises(DimensionError):
        rotate_set(polygon_set(4), random_rotation(3, 0))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(POLYHEDRA), st.integers(0, 2**32))
def test_rotation_preserves_dot_multiset_and_report(name, seed):
    s = polyhedron_set(name)
    r = rotate_set(s, random_rotation(3, seed))
    d0 = np.sort((s.vectors @ s.vectors.T).ravel())
    d1 = np.sort((r.vectors @ r.vectors.T).ravel())
    np.testing.assert_allclose(d0, d1, atol=1e-12)
    a, b = validate_set(s), validate_set(r)
    assert a.frame_count == b.frame_count
    assert abs(a.min_angle_deg - b.min_angle_deg) <= 1e-6
    assert abs(a.centroid_norm - b.centroid_norm) <= 1e-9


def test_frames_octahedron():
    frames = find_orthonormal_frames(polyhedron_set("octahedron"))
    assert len(frames) == 1
    np.testing.assert_array_equal(frames[0].axes, np.eye(3))


def test_frames_polygons():
    assert len(find_orthonormal_frames(polygon_set(8, "full"))) == 2
    assert len(find_orthonormal_frames(polygon_set(4, "half"))) == 2
    for K in (4, 8, 12, 16, 20, 64):
        assert len(find_orthonormal_frames(polygon_set(K, "full"))) == K // 4
    for K in (6, 10, 14, 18):
        assert len(find_orthonormal_frames(polygon_set(K, "full"))) == 0


@pytest.mark.parametrize("name", POLYHEDRA)
def test_frame_count_matches_brute_force(name):
    s = polyhedron_set(name)
    assert len(find_orthonormal_frames(s)) == brute_force_frame_count(s.vectors)


def test_frame_counts_recorded():
    # icosahedron and truncated octahedron carry no perpendicular vertex triple
    counts = {n: validate_set(polyhedron_set(n)).frame_count for n in POLYHEDRA}
    assert counts == dict(tetrahedron=0, octahedron=1, cube=0, icosahedron=0,
                          dodecahedron=0, truncated_octahedron=0, soccer_ball=0)


def test_frames_are_canonical_and_orthonormal():
    for fr in find_orthonormal_frames(polygon_set(16, "full")):
        assert isinstance(fr, OrthonormalFrame)
        assert np.abs(fr.axes @ fr.axes.T - np.eye(2)).max() <= 1e-12
        assert [tuple(a) for a in fr.axes] == sorted((tuple(a) for a in fr.axes), reverse=True)
        for a in fr.axes:
            first = a[np.abs(a) > 1e-9][0]
            assert first > 0


def test_validate_reports():
    r = validate_set(polyhedron_set("octahedron"))
    assert r.centroid_norm == 0 and abs(r.min_angle_deg - 90) < 1e-12
    assert not validate_set(polygon_set(4, "half")).antipodal_closed
    assert validate_set(polyhedron_set("cube")).frame_count == 0


def test_parse_set_spec():
    assert len(parse_set_spec("polygon:8")) == 8
    assert not parse_set_spec("polygon:4:half").antipodal_closed
    assert len(parse_set_spec("icosahedron")) == 12
    with pytest.raises(ValueError):
        parse_set_spec("polygon")
