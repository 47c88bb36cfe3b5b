import math
from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from multigrad.directional import (
    central_diff,
    complex_step,
    complex_step_line_avg,
    directional_derivative,
)
from multigrad.exceptions import CapabilityError, DimensionError, EvaluationError
from multigrad.fields import ScalarField, corpus_field

EPS = np.finfo(float).eps
H_VALUES = [1e-2, 1e-10, 1e-50, 1e-100, 1e-150]


def test_central_exact_on_quadratic():
    f = corpus_field("quadratic1d", a=1, b=0, c=0)
    assert central_diff(f, [3.0], [1.0], 0.5).value == 6.0


def test_central_circle0():
    f = corpus_field("circle0", r=1)
    assert abs(central_diff(f, (1, 1), (1, 0), 1e-3).value - 2.0) <= 1e-9


def test_central_indicator_both_outside():
    f = corpus_field("halfplane2d")
    assert central_diff(f, (0, 0.5), (0, 1), 0.1).value == 0.0


def test_complex_step_symbolic_oracle():
    # independent symbolic expansion of Im((3 + 0.6 i h)^2 + (4 + 0.8 i h)^2) / h
    h = sp.symbols("h", positive=True)
    x, y = 3 + sp.Rational(3, 5) * sp.I * h, 4 + sp.Rational(4, 5) * sp.I * h
    expected = sp.simplify(sp.im(sp.expand(x**2 + y**2 - 1)) / h)
    assert expected == 10
    f = corpus_field("circle0", r=1)
    assert complex_step(f, (3, 4), (0.6, 0.8), 1e-100).value == 10.0


@pytest.mark.parametrize("h", H_VALUES)
def test_complex_step_quadratic_any_h(h):
    f = corpus_field("quadratic1d", a=2, b=3, c=5)
    assert abs(complex_step(f, [1.0], [1.0], h).value - 7.0) <= 4 * EPS * 7.0


def test_complex_step_circle0_polygon_directions():
    f = corpus_field("circle0", r=1)
    x, y, K = 0.7, -1.3, 8
    for k in range(K):
        n = (math.cos(math.pi * k / K), math.sin(math.pi * k / K))
        expected = 2 * x * n[0] + 2 * y * n[1]
        assert abs(complex_step(f, (x, y), n, 1e-20).value - expected) <= 4 * EPS * 4


# keep h * f' in the normal range; below it the imaginary part underflows
coef = st.floats(-10, 10).filter(lambda v: v == 0 or abs(v) > 1e-100)


@settings(max_examples=300, deadline=None)
@given(coef, coef, coef, coef, st.sampled_from(H_VALUES))
def test_quadratic_exactness_conditioned(a, b, c, x, h):
    # error bounded by a few ulps of the terms that make up 2ax + b
    assume(all(t == 0 or abs(t) * h > 1e-290 for t in (a, a * x, b)))
    f = corpus_field("quadratic1d", a=a, b=b, c=c)
    exact = 2 * Fraction(a) * Fraction(x) + Fraction(b)
    scale = 2 * abs(a * x) + abs(b)
    err = abs(Fraction(complex_step(f, [x], [1.0], h).value) - exact)
    assert err <= 4 * EPS * scale


def test_line_avg_examples():
    q = corpus_field("quadratic1d", a=2, b=3, c=5)
    assert abs(complex_step_line_avg(q, [1.0], [1.0], 1e-8).value - 7.0) <= 4 * EPS * 7.0
    c0 = corpus_field("circle0", r=1)
    assert complex_step_line_avg(c0, (3, 4), (1, 0), 1e-50).value == 6.0


def test_line_avg_matches_complex_step(rng):
    f = corpus_field("expsin2d")
    for _ in range(100):
        p = rng.uniform(-2, 2, 2)
        t = rng.uniform(0, 2 * np.pi)
        n = (math.cos(t), math.sin(t))
        a = complex_step(f, p, n, 1e-20).value
        b = complex_step_line_avg(f, p, n, 1e-20).value
        assert abs(a - b) <= 1e-15 * max(1.0, abs(a))


@settings(max_examples=200, deadline=None)
@given(st.floats(-3, 3), st.floats(-3, 3), st.floats(0, 2 * math.pi), st.floats(1e-8, 1e-1))
def test_central_odd_symmetry(x, y, t, h):
    f = corpus_field("expsin2d")
    n = np.array([math.cos(t), math.sin(t)])
    assert central_diff(f, (x, y), -n, h).value == -central_diff(f, (x, y), n, h).value


def test_roundoff_floor(rng):
    f = corpus_field("expsin2d")
    for _ in range(20):
        p = rng.uniform(-1, 1, 2)
        n = np.array([1.0, 1.0]) / math.sqrt(2)
        truth = f.analytic_gradient(p) @ n
        ec = abs(complex_step(f, p, n, 1e-12).value - truth)
        ed = abs(central_diff(f, p, n, 1e-12).value - truth)
        assert ed >= 1e3 * ec


def test_reduces_to_1d_formula():
    g = ScalarField("sin", 1, lambda p: math.sin(p[0]), lambda z: __import__("cmath").sin(z[0]))
    x, h = 0.4, 1e-30
    assert complex_step(g, [x], [1.0], h).value == (__import__("cmath").sin(complex(x, h))).imag / h


def test_capability_error_names_field():
    f = corpus_field("disk2d", r=1)
    with pytest.raises(CapabilityError, match="disk2d"):
        complex_step(f, (0, 0), (1, 0), 1e-10)
    with pytest.raises(CapabilityError, match="disk2d"):
        complex_step_line_avg(f, (0, 0), (1, 0), 1e-10)


def test_input_validation():
    f = corpus_field("circle0", r=1)
    with pytest.raises(ValueError):
        central_diff(f, (0, 0), (1, 1), 1e-3)
    with pytest.raises(ValueError):
        central_diff(f, (0, 0), (1, 0), 0.0)
    with pytest.raises(DimensionError):
        central_diff(f, (0, 0, 0), (1, 0, 0), 1e-3)
    with pytest.raises(ValueError):
        directional_derivative(f, (0, 0), (1, 0), "forward")


def test_nan_probe_aborts():
    f = ScalarField("bad", 1, lambda p: math.nan if p[0] > 0 else 0.0)
    with pytest.raises(EvaluationError):
        central_diff(f, [0.0], [1.0], 0.1)
    g = ScalarField("badc", 1, lambda p: 0.0, lambda z: complex(math.inf, 0))
    with pytest.raises(EvaluationError):
        complex_step(g, [0.0], [1.0], 0.1)


def test_default_steps():
    f = corpus_field("circle0", r=1)
    assert directional_derivative(f, (1, 1), (1, 0), "central").h == 1e-6
    assert directional_derivative(f, (1, 1), (1, 0), "complex").h == 1e-100
