"""Black-box scalar fields and the built-in test corpus.

A field is evaluated through :meth:`ScalarField.eval_real`; smooth corpus
fields also carry a complex extension (used by complex-step derivatives) and
a closed-form gradient used as ground truth by the error-analysis harness.

The complex extensions are written so that, with all imaginary parts zero,
they perform the same floating-point operations as the real evaluation and
therefore return bit-identical real parts.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional, Sequence

import numpy as np

from .exceptions import CapabilityError, DegenerateGradientError, DimensionError

OUTSIDE = 1.0
INSIDE = -1.0

#: Norm below which a gradient is treated as zero.
TINY_NORM = 1e-300


def as_point(coords, dim: Optional[int] = None) -> np.ndarray:
    """Coerce ``coords`` to a finite 1-D float array of length 1, 2 or 3."""
    p = np.atleast_1d(np.asarray(coords, dtype=float))
    if p.ndim != 1 or not 1 <= p.size <= 3:
        raise DimensionError(f"point must have 1 to 3 coordinates, got shape {p.shape}")
    if dim is not None and p.size != dim:
        raise DimensionError(f"expected a {dim}-D point, got {p.size}-D")
    if not np.all(np.isfinite(p)):
        raise ValueError(f"point has non-finite coordinates: {p}")
    return p


@dataclass(frozen=True)
class ScalarField:
    """A real-valued function on R^n treated as a black box.

    ``real_fn`` receives a tuple of Python floats, ``complex_fn`` a tuple of
    Python complex numbers, ``gradient_fn`` a tuple of floats and returns a
    sequence of length ``dim``.
    """

    name: str
    dim: int
    real_fn: Callable[[tuple], float]
    complex_fn: Optional[Callable[[tuple], complex]] = None
    gradient_fn: Optional[Callable[[tuple], Sequence[float]]] = None
    params: Mapping[str, float] = field(default_factory=dict)

    @property
    def has_complex(self) -> bool:
        return self.complex_fn is not None

    @property
    def has_gradient(self) -> bool:
        return self.gradient_fn is not None

    def _coords(self, p) -> tuple:
        coords = tuple(p)
        if len(coords) != self.dim:
            raise DimensionError(
                f"field {self.name!r} is {self.dim}-D, got a {len(coords)}-D point"
            )
        return coords

    def eval_real(self, p) -> float:
        return float(self.real_fn(tuple(float(c) for c in self._coords(p))))

    def __call__(self, p) -> float:
        return self.eval_real(p)

    def eval_complex(self, z) -> complex:
        if self.complex_fn is None:
            raise CapabilityError(f"field {self.name!r} has no complex extension")
        return complex(self.complex_fn(tuple(complex(c) for c in self._coords(z))))

    def analytic_gradient(self, p) -> np.ndarray:
        if self.gradient_fn is None:
            raise CapabilityError(f"field {self.name!r} has no analytic gradient")
        g = np.asarray(self.gradient_fn(tuple(float(c) for c in self._coords(p))), dtype=float)
        if g.shape != (self.dim,):
            raise DimensionError(f"gradient of {self.name!r} has shape {g.shape}")
        return g


def unit_gradient(f: ScalarField, p) -> np.ndarray:
    """Analytic gradient of ``f`` at ``p`` scaled to unit length."""
    g = f.analytic_gradient(as_point(p, f.dim))
    norm = float(np.linalg.norm(g))
    if not math.isfinite(norm) or norm < TINY_NORM:
        raise DegenerateGradientError(f"gradient of {f.name!r} vanishes or is undefined at {tuple(p)}")
    return g / norm


# -- polar-form power, so that a zero imaginary part reproduces float ``**``


def _cpow(s: complex, a: float) -> complex:
    mod = abs(s)
    if mod == 0.0:
        return complex(0.0, 0.0)
    arg = math.atan2(s.imag, s.real)
    m = mod ** a
    return complex(m * math.cos(a * arg), m * math.sin(a * arg))


# -- corpus builders


def _quadratic1d(a, b, c):
    # Horner form keeps the imaginary part of the complex step well rounded.
    return ScalarField(
        name="quadratic1d",
        dim=1,
        real_fn=lambda p: (a * p[0] + b) * p[0] + c,
        complex_fn=lambda z: (a * z[0] + b) * z[0] + c,
        gradient_fn=lambda p: (2.0 * a * p[0] + b,),
        params=dict(a=a, b=b, c=c),
    )


def _circle0(r):
    rr = r * r
    return ScalarField(
        name="circle0",
        dim=2,
        real_fn=lambda p: p[0] * p[0] + p[1] * p[1] - rr,
        complex_fn=lambda z: z[0] * z[0] + z[1] * z[1] - rr,
        gradient_fn=lambda p: (2.0 * p[0], 2.0 * p[1]),
        params=dict(r=r),
    )


def _circle1(r):
    def F(p):
        u, v = p[0] / r, p[1] / r
        return u * u + v * v - 1.0

    rr = r * r
    return ScalarField(
        name="circle1",
        dim=2,
        real_fn=F,
        complex_fn=F,
        gradient_fn=lambda p: (2.0 * p[0] / rr, 2.0 * p[1] / rr),
        params=dict(r=r),
    )


def _circle2(r):
    def grad(p):
        d = math.hypot(p[0], p[1])
        if d == 0.0:
            return (math.nan, math.nan)
        return (p[0] / d, p[1] / d)

    return ScalarField(
        name="circle2",
        dim=2,
        real_fn=lambda p: math.sqrt(p[0] * p[0] + p[1] * p[1]) - r,
        complex_fn=lambda z: cmath.sqrt(z[0] * z[0] + z[1] * z[1]) - r,
        gradient_fn=grad,
        params=dict(r=r),
    )


def _circle3(r, a):
    if not a > 0:
        raise ValueError(f"circle3 exponent a must be positive, got {a}")
    offset = r ** (2.0 * a)

    def grad(p):
        s = p[0] * p[0] + p[1] * p[1]
        if s == 0.0 and a < 1.0:
            return (math.nan, math.nan)
        k = 2.0 * a * s ** (a - 1.0)
        return (k * p[0], k * p[1])

    return ScalarField(
        name="circle3",
        dim=2,
        real_fn=lambda p: (p[0] * p[0] + p[1] * p[1]) ** a - offset,
        complex_fn=lambda z: _cpow(z[0] * z[0] + z[1] * z[1], a) - offset,
        gradient_fn=grad,
        params=dict(r=r, a=a),
    )


def _sphere3d(r):
    rr = r * r
    return ScalarField(
        name="sphere3d",
        dim=3,
        real_fn=lambda p: p[0] * p[0] + p[1] * p[1] + p[2] * p[2] - rr,
        complex_fn=lambda z: z[0] * z[0] + z[1] * z[1] + z[2] * z[2] - rr,
        gradient_fn=lambda p: (2.0 * p[0], 2.0 * p[1], 2.0 * p[2]),
        params=dict(r=r),
    )


def _expsin2d():
    # smooth non-polynomial field used by the roundoff benchmarks
    return ScalarField(
        name="expsin2d",
        dim=2,
        real_fn=lambda p: math.exp(p[0]) * math.sin(p[1]),
        complex_fn=lambda z: cmath.exp(z[0]) * cmath.sin(z[1]),
        gradient_fn=lambda p: (
            math.exp(p[0]) * math.sin(p[1]),
            math.exp(p[0]) * math.cos(p[1]),
        ),
    )


def _halfplane2d():
    return ScalarField(
        name="halfplane2d",
        dim=2,
        real_fn=lambda p: OUTSIDE if p[1] >= 0.0 else INSIDE,
    )


def _disk2d(r):
    rr = r * r
    return ScalarField(
        name="disk2d",
        dim=2,
        real_fn=lambda p: OUTSIDE if p[0] * p[0] + p[1] * p[1] > rr else INSIDE,
        params=dict(r=r),
    )


def mandelbrot_escapes(cx: float, cy: float, max_iter: int = 256) -> bool:
    """True if the orbit of 0 under z -> z^2 + c leaves the radius-2 disk."""
    zx = zy = 0.0
    for _ in range(max_iter):
        zx, zy = zx * zx - zy * zy + cx, 2.0 * zx * zy + cy
        if zx * zx + zy * zy > 4.0:
            return True
    return False


def _mandelbrot2d(max_iter):
    n = int(max_iter)
    if n < 1 or n != max_iter:
        raise ValueError(f"max_iter must be a positive integer, got {max_iter}")
    return ScalarField(
        name="mandelbrot2d",
        dim=2,
        real_fn=lambda p: OUTSIDE if mandelbrot_escapes(p[0], p[1], n) else INSIDE,
        params=dict(max_iter=n),
    )


# name -> (builder, required parameters, defaults)
_CORPUS: dict[str, tuple[Callable[..., ScalarField], tuple[str, ...], dict]] = {
    "quadratic1d": (_quadratic1d, ("a", "b", "c"), {}),
    "circle0": (_circle0, ("r",), {}),
    "circle1": (_circle1, ("r",), {}),
    "circle2": (_circle2, ("r",), {}),
    "circle3": (_circle3, ("r", "a"), {}),
    "sphere3d": (_sphere3d, ("r",), {}),
    "expsin2d": (_expsin2d, (), {}),
    "halfplane2d": (_halfplane2d, (), {}),
    "disk2d": (_disk2d, ("r",), {}),
    "mandelbrot2d": (_mandelbrot2d, ("max_iter",), {"max_iter": 256}),
}

CORPUS_NAMES = tuple(_CORPUS)


def corpus_field(name: str, **params: float) -> ScalarField:
    """Build a named corpus field, e.g. ``corpus_field("circle2", r=1.0)``."""
    try:
        builder, required, defaults = _CORPUS[name]
    except KeyError:
        raise ValueError(f"unknown field {name!r}; known: {', '.join(CORPUS_NAMES)}") from None
    unknown = set(params) - set(required)
    if unknown:
        raise ValueError(f"field {name!r} takes no parameter(s) {sorted(unknown)}")
    values = dict(defaults)
    values.update(params)
    missing = [k for k in required if k not in values]
    if missing:
        raise ValueError(f"field {name!r} is missing parameter(s) {missing}")
    return builder(*(float(values[k]) for k in required))


def parse_field_spec(spec: str) -> ScalarField:
    """Parse ``name:key=val,key=val`` (e.g. ``circle2:r=1``) into a corpus field."""
    name, _, rest = spec.partition(":")
    params = {}
    for item in filter(None, (s.strip() for s in rest.split(","))):
        key, eq, val = item.partition("=")
        if not eq:
            raise ValueError(f"bad field parameter {item!r}, expected key=value")
        params[key.strip()] = float(val)
    return corpus_field(name.strip(), **params)
