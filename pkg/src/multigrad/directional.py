"""Derivatives of a scalar field along a ray or a line through a point."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import CapabilityError, DimensionError, EvaluationError
from .fields import ScalarField, as_point

CENTRAL = "central"
COMPLEX = "complex"
COMPLEX_LINE_AVG = "complex-line-avg"
DERIV_KINDS = (CENTRAL, COMPLEX, COMPLEX_LINE_AVG)

DEFAULT_H = {CENTRAL: 1e-6, COMPLEX: 1e-100, COMPLEX_LINE_AVG: 1e-100}

UNIT_TOL = 1e-12


@dataclass(frozen=True)
class DerivEstimate:
    value: float
    direction: np.ndarray
    h: float
    kind: str


def _check(f: ScalarField, p0, n, h):
    p = as_point(p0, f.dim)
    d = np.asarray(n, dtype=float).reshape(-1)
    if d.size != f.dim:
        raise DimensionError(f"direction is {d.size}-D but field {f.name!r} is {f.dim}-D")
    if abs(np.linalg.norm(d) - 1.0) > UNIT_TOL:
        raise ValueError(f"direction {d} is not unit length")
    if not (h > 0 and math.isfinite(h)):
        raise ValueError(f"step h must be positive and finite, got {h}")
    return p, d


def _finite(f: ScalarField, value: float, where) -> float:
    if not math.isfinite(value):
        raise EvaluationError(f"field {f.name!r} returned {value} at {where}")
    return value


def central_diff(f: ScalarField, p0, n, h: float = DEFAULT_H[CENTRAL]) -> DerivEstimate:
    """(F(p0 + n h) - F(p0 - n h)) / 2h."""
    p, d = _check(f, p0, n, h)
    fwd = [pj + h * dj for pj, dj in zip(p.tolist(), d.tolist())]
    bwd = [pj - h * dj for pj, dj in zip(p.tolist(), d.tolist())]
    fp = _finite(f, f.eval_real(fwd), fwd)
    fm = _finite(f, f.eval_real(bwd), bwd)
    return DerivEstimate((fp - fm) / (2.0 * h), d, h, CENTRAL)


def _im_step(f: ScalarField, p: np.ndarray, d: np.ndarray, h: float) -> float:
    z = [complex(pj, h * dj) for pj, dj in zip(p.tolist(), d.tolist())]
    w = f.eval_complex(z)
    if not (math.isfinite(w.real) and math.isfinite(w.imag)):
        raise EvaluationError(f"field {f.name!r} returned {w} at {z}")
    return w.imag


def _require_complex(f: ScalarField):
    if not f.has_complex:
        raise CapabilityError(
            f"field {f.name!r} has no complex extension; use the central difference"
        )


def complex_step(f: ScalarField, p0, n, h: float = DEFAULT_H[COMPLEX]) -> DerivEstimate:
    """Im F(p0 + i h n) / h.

    No subtraction is involved, so ``h`` can be taken far below the square
    root of machine epsilon without losing digits.
    """
    _require_complex(f)
    p, d = _check(f, p0, n, h)
    return DerivEstimate(_im_step(f, p, d, h) / h, d, h, COMPLEX)


def complex_step_line_avg(f: ScalarField, p0, n, h: float = DEFAULT_H[COMPLEX_LINE_AVG]) -> DerivEstimate:
    """Average of the complex-step estimates along +n and -n, sign-corrected.

    The estimate along -n is the negative of the one along +n, so the two are
    combined as (Im F(p0 + i h n) - Im F(p0 - i h n)) / 2h.  For fields whose
    complex extension satisfies F(conj z) = conj F(z) this equals
    :func:`complex_step`.
    """
    _require_complex(f)
    p, d = _check(f, p0, n, h)
    fwd = _im_step(f, p, d, h)
    bwd = _im_step(f, p, -d, h)
    return DerivEstimate((fwd - bwd) / (2.0 * h), d, h, COMPLEX_LINE_AVG)


_DISPATCH = {
    CENTRAL: central_diff,
    COMPLEX: complex_step,
    COMPLEX_LINE_AVG: complex_step_line_avg,
}


def directional_derivative(f: ScalarField, p0, n, kind: str = COMPLEX, h: float | None = None) -> DerivEstimate:
    try:
        fn = _DISPATCH[kind]
    except KeyError:
        raise ValueError(f"unknown derivative kind {kind!r}; expected one of {DERIV_KINDS}") from None
    return fn(f, p0, n, DEFAULT_H[kind] if h is None else h)
