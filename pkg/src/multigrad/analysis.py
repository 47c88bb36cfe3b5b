"""Error analysis against closed-form gradients.

Estimated gradients are compared with the analytic gradient by the cosine of
the angle between them, mapped to ``epsilon = (cos + 1) / 2`` so that 1 is a
perfect match and 0 points the opposite way. Error maps are written as 16-bit
binary PGM images; summary statistics and h-sweeps as CSV.
"""

from __future__ import annotations

import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .directional import DEFAULT_H, directional_derivative
from .estimators import EstimatorConfig, estimate
from .exceptions import CapabilityError, DegenerateGradientError, MultigradError
from .fields import TINY_NORM, ScalarField, as_point

MAXVAL = 65535


def fmt(x: float) -> str:
    """Round-trippable float formatting (17 significant digits)."""
    return format(float(x), ".17g")


def cos_error(est, truth) -> float:
    """Cosine of the angle between ``est`` and ``truth``, clamped to [-1, 1]."""
    a = np.asarray(getattr(est, "vector", est), dtype=float)
    b = np.asarray(truth, dtype=float)
    na, nb = float(np.linalg.norm(a)), float(np.linalg.norm(b))
    for norm, what in ((na, "estimate"), (nb, "truth")):
        if not math.isfinite(norm) or norm < TINY_NORM:
            raise DegenerateGradientError(f"{what} gradient is zero or undefined")
    c = float(np.dot(a / na, b / nb))
    return min(1.0, max(-1.0, c))


@dataclass(frozen=True)
class ErrorSample:
    """One pixel of an error map.

    Degenerate samples carry ``cos_theta = nan`` and ``epsilon = 0.0``.
    """

    point: tuple
    cos_theta: float
    epsilon: float
    est_norm: float
    degenerate: bool


@dataclass(frozen=True)
class ErrorGrid:
    bounds: tuple
    width: int
    height: int
    samples: tuple

    def __post_init__(self):
        xmin, xmax, ymin, ymax = self.bounds
        if not (xmin < xmax and ymin < ymax):
            raise ValueError(f"bounds must be ordered (xmin<xmax, ymin<ymax), got {self.bounds}")
        if len(self.samples) != self.width * self.height:
            raise ValueError("sample count does not match width*height")

    def epsilon_array(self) -> np.ndarray:
        """Epsilon values as a (height, width) array, row 0 at ymax."""
        return np.array([s.epsilon for s in self.samples]).reshape(self.height, self.width)


def pixel_centers(bounds, width: int, height: int) -> list[tuple[float, float]]:
    """Pixel-center coordinates in row-major order, top row (ymax) first."""
    xmin, xmax, ymin, ymax = map(float, bounds)
    dx = (xmax - xmin) / width
    dy = (ymax - ymin) / height
    return [
        (xmin + (i + 0.5) * dx, ymax - (j + 0.5) * dy)
        for j in range(height)
        for i in range(width)
    ]


def _degenerate(p, est_norm=0.0) -> ErrorSample:
    return ErrorSample(tuple(p), math.nan, 0.0, est_norm, True)


def error_sample(f: ScalarField, p, cfg: EstimatorConfig, index: Optional[int] = None,
                 exclusion: float = 1e-6) -> ErrorSample:
    truth = f.analytic_gradient(p)
    tn = float(np.linalg.norm(truth))
    if not math.isfinite(tn) or tn < max(exclusion, TINY_NORM):
        return _degenerate(p)
    try:
        est = estimate(f, p, cfg, index)
    except CapabilityError:
        raise
    except MultigradError:
        return _degenerate(p)
    en = float(np.linalg.norm(est.vector))
    if est.degenerate:
        return _degenerate(p, en if math.isfinite(en) else 0.0)
    c = cos_error(est, truth)
    return ErrorSample(tuple(p), c, (c + 1.0) / 2.0, en, False)


def error_map(f: ScalarField, cfg: EstimatorConfig, bounds=(-2.0, 2.0, -2.0, 2.0),
              width: int = 64, height: int = 64, exclusion_radius: float = 1e-6,
              workers: int = 1) -> ErrorGrid:
    """Per-pixel angle error of ``cfg``'s estimator against the analytic gradient.

    Pixels whose analytic gradient norm is below ``exclusion_radius`` are
    marked degenerate. ``workers > 1`` evaluates pixels on a thread pool; the
    per-pixel rotation seed depends only on the pixel index, so the result is
    identical to a serial run.
    """
    if not f.has_gradient:
        raise CapabilityError(f"field {f.name!r} has no analytic gradient to compare against")
    if f.dim != 2:
        raise ValueError("error maps are defined for 2-D fields")
    if width < 1 or height < 1:
        raise ValueError("width and height must be >= 1")
    centers = pixel_centers(bounds, width, height)

    def one(i):
        return error_sample(f, centers[i], cfg, i, exclusion_radius)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            samples = tuple(pool.map(one, range(len(centers))))
    else:
        samples = tuple(one(i) for i in range(len(centers)))
    return ErrorGrid(tuple(map(float, bounds)), width, height, samples)


# -- PGM


def pgm_bytes(grid: ErrorGrid) -> bytes:
    eps = grid.epsilon_array()
    deg = np.array([s.degenerate for s in grid.samples]).reshape(eps.shape)
    # round half up
    vals = np.floor(np.clip(eps, 0.0, 1.0) * MAXVAL + 0.5).astype(">u2")
    vals[deg] = 0
    header = f"P5\n{grid.width} {grid.height}\n{MAXVAL}\n".encode("ascii")
    return header + vals.tobytes()


def write_pgm(grid: ErrorGrid, path) -> None:
    with open(path, "wb") as fh:
        fh.write(pgm_bytes(grid))


def read_pgm(path) -> np.ndarray:
    """Read a binary P5 PGM written by :func:`write_pgm` into a (height, width) array."""
    with open(path, "rb") as fh:
        data = fh.read()
    tokens = []
    pos = 0
    while len(tokens) < 4:
        while data[pos:pos + 1].isspace():
            pos += 1
        start = pos
        while not data[pos:pos + 1].isspace():
            pos += 1
        tokens.append(data[start:pos])
    pos += 1
    if tokens[0] != b"P5":
        raise ValueError("not a binary PGM")
    w, h, maxval = int(tokens[1]), int(tokens[2]), int(tokens[3])
    dtype = ">u2" if maxval > 255 else "u1"
    return np.frombuffer(data[pos:], dtype=dtype, count=w * h).reshape(h, w)


# -- statistics


@dataclass(frozen=True)
class ErrorStats:
    n_samples: int
    n_degenerate: int
    eps_min: float
    eps_mean: float
    eps_median: float
    angle_median_deg: float
    angle_p90_deg: float
    angle_p99_deg: float
    angle_max_deg: float

    def csv(self) -> str:
        names = list(self.__dataclass_fields__)
        vals = [str(getattr(self, n)) if isinstance(getattr(self, n), int) else fmt(getattr(self, n))
                for n in names]
        return ",".join(names) + "\n" + ",".join(vals) + "\n"


def error_stats(grid: ErrorGrid) -> ErrorStats:
    good = [s for s in grid.samples if not s.degenerate]
    if not good:
        raise DegenerateGradientError("every sample in the grid is degenerate")
    eps = np.array([s.epsilon for s in good])
    ang = np.degrees(np.arccos(np.clip([s.cos_theta for s in good], -1.0, 1.0)))
    q50, q90, q99 = np.quantile(ang, [0.5, 0.9, 0.99])
    return ErrorStats(
        n_samples=len(grid.samples),
        n_degenerate=len(grid.samples) - len(good),
        eps_min=float(eps.min()),
        eps_mean=float(eps.mean()),
        eps_median=float(np.median(eps)),
        angle_median_deg=float(q50),
        angle_p90_deg=float(q90),
        angle_p99_deg=float(q99),
        angle_max_deg=float(ang.max()),
    )


# -- h sweep


@dataclass(frozen=True)
class SweepRow:
    h: float
    kind: str
    estimate: float
    abs_error: float
    rel_error: float


SWEEP_HEADER = "h,kind,estimate,abs_error,rel_error"


def h_sweep(f: ScalarField, p0, n, h_values: Iterable[float], kinds: Sequence[str]) -> list[SweepRow]:
    """Directional-derivative error versus step size for each derivative kind.

    The truth is the analytic gradient dotted with ``n``. Rows are ordered by
    kind, then by ``h`` as given.
    """
    p = as_point(p0, f.dim)
    d = np.asarray(n, dtype=float).reshape(-1)
    truth = float(np.dot(f.analytic_gradient(p), d))
    hs = list(h_values)
    rows = []
    for kind in kinds:
        if kind not in DEFAULT_H:
            raise ValueError(f"unknown derivative kind {kind!r}")
        for h in hs:
            v = directional_derivative(f, p, d, kind, h).value
            err = abs(v - truth)
            rel = err / abs(truth) if truth != 0.0 else (0.0 if err == 0.0 else math.inf)
            rows.append(SweepRow(float(h), kind, v, err, rel))
    return rows


def sweep_csv(rows: Sequence[SweepRow]) -> str:
    out = io.StringIO()
    out.write(SWEEP_HEADER + "\n")
    for r in rows:
        out.write(f"{fmt(r.h)},{r.kind},{fmt(r.estimate)},{fmt(r.abs_error)},{fmt(r.rel_error)}\n")
    return out.getvalue()


def parse_h_range(spec: str) -> list[float]:
    """``start:stop:log|lin[,count]`` (count defaults to 50), or a comma list of values."""
    if ":" not in spec:
        return [float(s) for s in spec.split(",") if s]
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValueError(f"bad h range {spec!r}, expected start:stop:log|lin[,count]")
    start, stop = float(parts[0]), float(parts[1])
    mode, _, count = parts[2].partition(",")
    num = int(count) if count else 50
    if num < 1:
        raise ValueError("h range count must be >= 1")
    if mode == "log":
        if start <= 0 or stop <= 0:
            raise ValueError("log h range needs positive endpoints")
        vals = np.logspace(math.log10(start), math.log10(stop), num)
    elif mode == "lin":
        vals = np.linspace(start, stop, num)
    else:
        raise ValueError(f"h range mode must be log or lin, got {mode!r}")
    if np.any(vals <= 0):
        raise ValueError("step sizes must be positive")
    return [float(v) for v in vals]
