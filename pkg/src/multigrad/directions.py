"""Uniformly distributed unit-vector sets in 2D and 3D.

Sets come from regular polygons and from regular / semiregular polyhedra
scaled to unit circumradius. They can be rotated at random (Haar measure on
SO(n)) to break aliasing without changing their distribution, and searched
exhaustively for orthonormal frames usable by the multi-axis estimator.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .exceptions import DimensionError

UNIT_TOL = 1e-12
CENTROID_TOL = 1e-9
DUPLICATE_TOL = 1e-12

PHI = (1.0 + math.sqrt(5.0)) / 2.0


def _rows(vectors) -> np.ndarray:
    a = np.array(vectors, dtype=float)
    if a.ndim != 2 or a.shape[0] == 0 or a.shape[1] not in (2, 3):
        raise DimensionError(f"expected a non-empty (K, 2|3) array, got shape {a.shape}")
    a.setflags(write=False)
    return a


def _antipodal_closed(v: np.ndarray, tol: float = 1e-9) -> bool:
    for u in v:
        if not np.any(np.all(np.abs(v + u) <= tol, axis=1)):
            return False
    return True


@dataclass(frozen=True, eq=False)
class DirectionSet:
    """An ordered set of unit vectors, one per row of ``vectors``."""

    vectors: np.ndarray
    source: str
    antipodal_closed: bool

    def __post_init__(self):
        v = _rows(self.vectors)
        object.__setattr__(self, "vectors", v)
        residual = np.abs(np.linalg.norm(v, axis=1) - 1.0)
        if residual.max() > UNIT_TOL:
            raise ValueError(f"{self.source}: vectors not unit length (residual {residual.max():.3g})")
        if len(v) > 1:
            dots = v @ v.T
            np.fill_diagonal(dots, -np.inf)
            if dots.max() >= 1.0 - DUPLICATE_TOL:
                raise ValueError(f"{self.source}: duplicate vectors")
        if self.antipodal_closed and np.linalg.norm(v.sum(axis=0)) > CENTROID_TOL:
            raise ValueError(f"{self.source}: antipodal set with non-zero centroid")

    @classmethod
    def from_vectors(cls, vectors, source: str = "custom") -> "DirectionSet":
        v = _rows(vectors)
        return cls(v, source, _antipodal_closed(v))

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)


@dataclass(frozen=True, eq=False)
class OrthonormalFrame:
    """n mutually orthogonal unit vectors (rows of ``axes``)."""

    axes: np.ndarray

    def __post_init__(self):
        a = np.array(self.axes, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] not in (1, 2, 3):
            raise DimensionError(f"frame must be n x n with n in 1..3, got {a.shape}")
        if np.abs(a @ a.T - np.eye(len(a))).max() > UNIT_TOL:
            raise ValueError("frame axes are not orthonormal")
        a.setflags(write=False)
        object.__setattr__(self, "axes", a)

    @classmethod
    def canonical(cls, dim: int) -> "OrthonormalFrame":
        return cls(np.eye(dim))

    @property
    def dim(self) -> int:
        return self.axes.shape[0]


@dataclass(frozen=True, eq=False)
class RotationMatrix:
    matrix: np.ndarray
    seed: Optional[int] = None

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        n = m.shape[0]
        if m.shape != (n, n) or n not in (2, 3):
            raise DimensionError(f"rotation must be 2x2 or 3x3, got {m.shape}")
        if np.abs(m.T @ m - np.eye(n)).max() > UNIT_TOL or abs(np.linalg.det(m) - 1.0) > UNIT_TOL:
            raise ValueError("matrix is not a proper rotation")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def apply(self, v) -> np.ndarray:
        """Rotate a vector, or every row of a (K, n) array."""
        return np.asarray(v, dtype=float) @ self.matrix.T


# -- polygons


def polygon_set(K: int, span: str = "full") -> DirectionSet:
    """Vertices of a regular K-gon on the unit circle.

    ``span="half"`` gives angles pi*k/K (inverse vectors removed), ``"full"``
    gives 2*pi*k/K.
    """
    if int(K) != K or K < 2:
        raise ValueError(f"polygon needs an integer K >= 2, got {K}")
    K = int(K)
    if span == "half":
        step = math.pi / K
    elif span == "full":
        step = 2.0 * math.pi / K
    else:
        raise ValueError(f"span must be 'half' or 'full', got {span!r}")
    angles = [step * k for k in range(K)]
    v = np.array([(math.cos(t), math.sin(t)) for t in angles])
    return DirectionSet(v, f"polygon(K={K},{span})", span == "full" and K % 2 == 0)


# -- polyhedra


def _signed(base: Sequence[float]):
    """All sign combinations of ``base``, skipping sign flips of zeros."""
    choices = [(c,) if c == 0 else (c, -c) for c in base]
    return [tuple(x) for x in itertools.product(*choices)]


def _cyclic(base):
    a, b, c = base
    return [(a, b, c), (b, c, a), (c, a, b)]


def _even_perms(base):
    return _cyclic(base)


def _all_perms(base):
    return sorted(set(itertools.permutations(base)))


def _orbit(bases, perms):
    out = []
    for base in bases:
        for p in perms(base):
            for s in _signed(p):
                if s not in out:
                    out.append(s)
    return out


def _tetrahedron():
    return [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]


def _octahedron():
    return [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]


def _cube():
    return list(itertools.product((1, -1), repeat=3))


def _icosahedron():
    return _orbit([(0.0, 1.0, PHI)], _cyclic)


def _dodecahedron():
    return _cube() + _orbit([(0.0, 1.0 / PHI, PHI)], _cyclic)


def _truncated_octahedron():
    return _orbit([(0, 1, 2)], _all_perms)


def _soccer_ball():
    # truncated icosahedron
    return _orbit(
        [(0.0, 1.0, 3.0 * PHI), (1.0, 2.0 + PHI, 2.0 * PHI), (PHI, 2.0, PHI ** 3)],
        _even_perms,
    )


_POLYHEDRA = {
    "tetrahedron": _tetrahedron,
    "octahedron": _octahedron,
    "cube": _cube,
    "icosahedron": _icosahedron,
    "dodecahedron": _dodecahedron,
    "truncated_octahedron": _truncated_octahedron,
    "soccer_ball": _soccer_ball,
}

POLYHEDRA = tuple(_POLYHEDRA)


def polyhedron_set(name: str) -> DirectionSet:
    """Vertices of a named polyhedron, centered and scaled to unit circumradius."""
    try:
        verts = np.array(_POLYHEDRA[name](), dtype=float)
    except KeyError:
        raise ValueError(f"unknown polyhedron {name!r}; known: {', '.join(POLYHEDRA)}") from None
    verts /= np.linalg.norm(verts, axis=1, keepdims=True)
    return DirectionSet(verts, f"polyhedron({name})", name != "tetrahedron")


# -- rotations


def random_rotation(dim: int, seed: int) -> RotationMatrix:
    """Haar-uniform rotation of R^dim drawn deterministically from ``seed``.

    2D uses a uniform angle; 3D converts a uniform unit quaternion
    (Shoemake's subgroup construction) to a matrix.
    """
    rng = np.random.default_rng(seed)
    if dim == 2:
        t = 2.0 * math.pi * rng.random()
        c, s = math.cos(t), math.sin(t)
        m = [[c, -s], [s, c]]
    elif dim == 3:
        u1, u2, u3 = rng.random(3)
        a, b = math.sqrt(1.0 - u1), math.sqrt(u1)
        w = a * math.sin(2.0 * math.pi * u2)
        x = a * math.cos(2.0 * math.pi * u2)
        y = b * math.sin(2.0 * math.pi * u3)
        z = b * math.cos(2.0 * math.pi * u3)
        m = [
            [1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)],
            [2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)],
            [2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)],
        ]
    else:
        raise DimensionError(f"random rotations are supported in 2D and 3D, not {dim}D")
    return RotationMatrix(np.array(m), seed)


def rotation_2d(angle: float) -> RotationMatrix:
    c, s = math.cos(angle), math.sin(angle)
    return RotationMatrix(np.array([[c, -s], [s, c]]))


def rotate_set(s: DirectionSet, r: RotationMatrix) -> DirectionSet:
    if s.dim != r.dim:
        raise DimensionError(f"cannot rotate a {s.dim}-D set by a {r.dim}-D rotation")
    v = r.apply(s.vectors)
    # re-project onto the sphere so rounding cannot drift past the unit tolerance
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    return DirectionSet(v, f"rotated({s.source},seed={r.seed})", s.antipodal_closed)


def rotate_frame(frame: OrthonormalFrame, r: RotationMatrix) -> OrthonormalFrame:
    if frame.dim != r.dim:
        raise DimensionError(f"cannot rotate a {frame.dim}-D frame by a {r.dim}-D rotation")
    return OrthonormalFrame(r.apply(frame.axes))


# -- frame search


def _line_representative(v: np.ndarray, tol: float) -> np.ndarray:
    for c in v:
        if abs(c) > tol:
            return v if c > 0 else -v
    return v


def antipodal_lines(s: DirectionSet, tol: float = 1e-9) -> np.ndarray:
    """One representative per +-v line, first non-negligible coordinate positive."""
    lines: list[np.ndarray] = []
    for v in s.vectors:
        rep = _line_representative(v, tol)
        if not any(np.all(np.abs(rep - u) <= max(tol, DUPLICATE_TOL)) for u in lines):
            lines.append(rep)
    return np.array(lines)


def find_orthonormal_frames(s: DirectionSet, tol: float = 1e-9) -> list[OrthonormalFrame]:
    """Every set of ``dim`` mutually perpendicular lines in ``s``.

    Antipodal vectors count as one line. Each frame's axes are sorted in
    descending lexicographic order (so the coordinate axes come out as the
    identity), and the frames are returned in the same order.
    """
    if tol < 0:
        raise ValueError("tol must be non-negative")
    lines = antipodal_lines(s, tol)
    n = s.dim
    frames = []
    for combo in itertools.combinations(range(len(lines)), n):
        axes = lines[list(combo)]
        g = axes @ axes.T
        if np.all(np.abs(g[np.triu_indices(n, 1)]) <= tol):
            axes = np.array(sorted(map(tuple, axes), reverse=True))
            frames.append(axes)
    frames.sort(key=lambda a: tuple(a.ravel()), reverse=True)
    return [OrthonormalFrame(_orthonormalize(a)) for a in frames]


def _orthonormalize(a: np.ndarray) -> np.ndarray:
    # frames found with a loose tolerance are snapped to exact orthonormality
    if np.abs(a @ a.T - np.eye(len(a))).max() <= UNIT_TOL:
        return a
    q, r = np.linalg.qr(a.T)
    return (q * np.sign(np.diag(r))).T


@dataclass(frozen=True)
class SetReport:
    n_vectors: int
    max_norm_residual: float
    centroid_norm: float
    min_angle_deg: float
    antipodal_closed: bool
    n_lines: int
    frame_count: int


def validate_set(s: DirectionSet, tol: float = 1e-9) -> SetReport:
    v = s.vectors
    if len(v) > 1:
        dots = np.clip(v @ v.T, -1.0, 1.0)
        np.fill_diagonal(dots, -1.0)
        min_angle = math.degrees(math.acos(dots.max()))
    else:
        min_angle = 180.0
    return SetReport(
        n_vectors=len(v),
        max_norm_residual=float(np.abs(np.linalg.norm(v, axis=1) - 1.0).max()),
        centroid_norm=float(np.linalg.norm(v.sum(axis=0))),
        min_angle_deg=min_angle,
        antipodal_closed=_antipodal_closed(v, tol),
        n_lines=len(antipodal_lines(s, tol)),
        frame_count=len(find_orthonormal_frames(s, tol)),
    )


def parse_set_spec(spec: str) -> DirectionSet:
    """``polygon:K[:half|full]`` or a polyhedron name."""
    parts = spec.split(":")
    if parts[0] == "polygon":
        if len(parts) not in (2, 3):
            raise ValueError(f"bad polygon spec {spec!r}, expected polygon:K[:half|full]")
        return polygon_set(int(parts[1]), parts[2] if len(parts) == 3 else "full")
    if len(parts) == 1:
        return polyhedron_set(parts[0])
    raise ValueError(f"bad direction-set spec {spec!r}")
