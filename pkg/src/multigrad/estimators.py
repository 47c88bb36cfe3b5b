"""Gradient estimators built from directional derivatives.

Four strategies are provided:

* single-axis: sum of directional derivatives times axis over one orthonormal frame
* multi-axis: average of single-axis estimates over several frames
* multi-vector: projected derivatives summed over a uniform direction set, scaled by n/K
* hart: indicator-field normal from value-weighted probe directions (no derivatives)
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from .directional import CENTRAL, COMPLEX, DEFAULT_H, DERIV_KINDS, directional_derivative
from .directions import (
    DirectionSet,
    OrthonormalFrame,
    find_orthonormal_frames,
    random_rotation,
    rotate_frame,
    rotate_set,
)
from .exceptions import CapabilityError, DimensionError, EvaluationError
from .fields import TINY_NORM, ScalarField, as_point

SINGLE_AXIS = "single-axis"
MULTI_AXIS = "multi-axis"
MULTI_VECTOR = "multi-vector"
HART = "hart"
METHODS = (SINGLE_AXIS, MULTI_AXIS, MULTI_VECTOR, HART)


@dataclass(frozen=True, eq=False)
class GradientEstimate:
    """An estimated gradient.

    ``raw`` is the accumulated sum before dividing by ``normalization``;
    ``vector = raw / normalization``.
    """

    vector: np.ndarray
    method: str
    deriv_kind: str
    h: float
    k: int
    normalization: float
    raw: np.ndarray

    @property
    def degenerate(self) -> bool:
        norm = float(np.linalg.norm(self.vector))
        return not math.isfinite(norm) or norm < TINY_NORM


def _check_dim(f: ScalarField, dim: int, what: str):
    if dim != f.dim:
        raise DimensionError(f"{what} is {dim}-D but field {f.name!r} is {f.dim}-D")


def _step(kind: str, h: Optional[float]) -> float:
    if kind not in DERIV_KINDS:
        raise ValueError(f"unknown derivative kind {kind!r}; expected one of {DERIV_KINDS}")
    return DEFAULT_H[kind] if h is None else float(h)


def _frame_sum(f, p, frame: OrthonormalFrame, kind, h) -> np.ndarray:
    total = np.zeros(f.dim)
    for axis in frame.axes:
        total = total + directional_derivative(f, p, axis, kind, h).value * axis
    return total


def single_axis(f: ScalarField, p0, frame: Optional[OrthonormalFrame] = None,
                deriv_kind: str = COMPLEX, h: Optional[float] = None) -> GradientEstimate:
    """Gradient from one orthonormal frame (the classical method when the frame is canonical)."""
    h = _step(deriv_kind, h)
    p = as_point(p0, f.dim)
    frame = OrthonormalFrame.canonical(f.dim) if frame is None else frame
    _check_dim(f, frame.dim, "frame")
    g = _frame_sum(f, p, frame, deriv_kind, h)
    return GradientEstimate(g, SINGLE_AXIS, deriv_kind, h, frame.dim, 1.0, g)


def multi_axis(f: ScalarField, p0, frames: Sequence[OrthonormalFrame],
               deriv_kind: str = COMPLEX, h: Optional[float] = None) -> GradientEstimate:
    """Average of single-axis estimates over ``frames``."""
    h = _step(deriv_kind, h)
    p = as_point(p0, f.dim)
    frames = list(frames)
    if not frames:
        raise ValueError("multi-axis estimation needs at least one frame")
    raw = np.zeros(f.dim)
    for fr in frames:
        _check_dim(f, fr.dim, "frame")
        raw = raw + _frame_sum(f, p, fr, deriv_kind, h)
    m = float(len(frames))
    return GradientEstimate(raw / m, MULTI_AXIS, deriv_kind, h, len(frames) * f.dim, m, raw)


def _antipode_index(v: np.ndarray) -> list[Optional[int]]:
    idx: list[Optional[int]] = [None] * len(v)
    for i, u in enumerate(v):
        if idx[i] is not None:
            continue
        hit = np.flatnonzero(np.all(np.abs(v + u) <= 1e-12, axis=1))
        hit = [j for j in hit if j > i]
        if hit:
            idx[hit[0]] = i
    return idx


def multi_vector(f: ScalarField, p0, s: DirectionSet,
                 deriv_kind: str = COMPLEX, h: Optional[float] = None) -> GradientEstimate:
    """(n/K) * sum_k d_k n_k over the K vectors of ``s``.

    With central differences the derivative along -v is the exact negative of
    the one along v, so antipodal partners reuse it instead of re-evaluating.
    """
    h = _step(deriv_kind, h)
    p = as_point(p0, f.dim)
    _check_dim(f, s.dim, "direction set")
    v = s.vectors
    d = np.empty(len(v))
    partner = _antipode_index(v) if deriv_kind == CENTRAL else [None] * len(v)
    for k, n in enumerate(v):
        j = partner[k]
        d[k] = -d[j] if j is not None else directional_derivative(f, p, n, deriv_kind, h).value
    raw = np.zeros(f.dim)
    for dk, n in zip(d, v):
        raw = raw + dk * n
    norm = len(v) / f.dim
    return GradientEstimate(raw / norm, MULTI_VECTOR, deriv_kind, h, len(v), norm, raw)


def hart_multisample(f: ScalarField, p0, s: DirectionSet, probe_radius: float = 1.0) -> GradientEstimate:
    """Sum of probe directions weighted by the field value at each probe.

    On an indicator field (+1 outside, -1 inside) the tangential parts cancel
    and the result points outward across the boundary.
    """
    if not (probe_radius > 0 and math.isfinite(probe_radius)):
        raise ValueError(f"probe_radius must be positive, got {probe_radius}")
    p = as_point(p0, f.dim)
    _check_dim(f, s.dim, "direction set")
    raw = np.zeros(f.dim)
    for n in s.vectors:
        q = p + probe_radius * n
        val = f.eval_real(q)
        if not math.isfinite(val):
            raise EvaluationError(f"field {f.name!r} returned {val} at {q}")
        raw = raw + val * n
    return GradientEstimate(raw, HART, "none", probe_radius, len(s), 1.0, raw)


Directions = Union[DirectionSet, OrthonormalFrame, Sequence[OrthonormalFrame], None]


@dataclass(frozen=True)
class EstimatorConfig:
    """Everything needed to estimate a gradient at a point.

    ``directions`` is a frame (single-axis), a list of frames or a
    DirectionSet to extract frames from (multi-axis), or a DirectionSet
    (multi-vector, hart). ``None`` means the canonical frame for single-axis.
    When ``seed`` is set every query applies a fresh Haar rotation to the
    directions, derived from ``seed`` and the caller's point index.
    """

    method: str = SINGLE_AXIS
    deriv_kind: str = COMPLEX
    h: Optional[float] = None
    directions: Directions = None
    probe_radius: float = 1.0
    seed: Optional[int] = None
    frame_tol: float = field(default=1e-9, repr=False)

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}; expected one of {METHODS}")
        if self.method != HART and self.deriv_kind not in DERIV_KINDS:
            raise ValueError(f"unknown derivative kind {self.deriv_kind!r}")
        if self.h is not None and not (self.h > 0 and math.isfinite(self.h)):
            raise ValueError(f"h must be positive, got {self.h}")
        if not self.probe_radius > 0:
            raise ValueError(f"probe_radius must be positive, got {self.probe_radius}")

    @property
    def step(self) -> Optional[float]:
        if self.method == HART:
            return None
        return _step(self.deriv_kind, self.h)


def _frames_of(directions, tol) -> list[OrthonormalFrame]:
    if isinstance(directions, OrthonormalFrame):
        return [directions]
    if isinstance(directions, DirectionSet):
        frames = find_orthonormal_frames(directions, tol)
        if not frames:
            raise ValueError(
                f"{directions.source} contains no orthonormal frame; use multi-vector instead"
            )
        return frames
    frames = list(directions)
    if not all(isinstance(fr, OrthonormalFrame) for fr in frames):
        raise TypeError("expected OrthonormalFrame instances")
    return frames


def point_seed(seed: int, index: Optional[int]):
    """Seed material for the rotation applied at one query point."""
    return seed if index is None else (int(seed), int(index))


def estimate(f: ScalarField, p0, cfg: EstimatorConfig, index: Optional[int] = None) -> GradientEstimate:
    """Dispatch to the configured estimator.

    ``index`` identifies the query point (e.g. a pixel number) so that seeded
    rotations differ per point yet stay reproducible in any evaluation order.
    """
    if cfg.method != HART and cfg.deriv_kind != CENTRAL and not f.has_complex:
        raise CapabilityError(
            f"field {f.name!r} has no complex extension; {cfg.deriv_kind!r} derivatives need one"
        )
    rot = None
    if cfg.seed is not None:
        rot = random_rotation(f.dim, point_seed(cfg.seed, index))

    if cfg.method == SINGLE_AXIS:
        d = cfg.directions
        if d is None:
            frame = OrthonormalFrame.canonical(f.dim)
        else:
            frame = _frames_of(d, cfg.frame_tol)[0]
        if rot is not None:
            frame = rotate_frame(frame, rot)
        return single_axis(f, p0, frame, cfg.deriv_kind, cfg.h)

    if cfg.method == MULTI_AXIS:
        if cfg.directions is None:
            raise ValueError("multi-axis estimation needs frames or a direction set")
        frames = _frames_of(cfg.directions, cfg.frame_tol)
        if rot is not None:
            frames = [rotate_frame(fr, rot) for fr in frames]
        return multi_axis(f, p0, frames, cfg.deriv_kind, cfg.h)

    s = cfg.directions
    if not isinstance(s, DirectionSet):
        raise ValueError(f"{cfg.method} estimation needs a DirectionSet")
    if rot is not None:
        s = rotate_set(s, rot)
    if cfg.method == MULTI_VECTOR:
        return multi_vector(f, p0, s, cfg.deriv_kind, cfg.h)
    return hart_multisample(f, p0, s, cfg.probe_radius)
