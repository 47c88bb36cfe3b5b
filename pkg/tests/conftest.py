import math

import numpy as np
import pytest

from multigrad.fields import ScalarField


def linear_field(c):
    """F(p) = c . p, complex-capable; its directional derivative along n is c . n."""
    c = tuple(float(x) for x in c)
    f = lambda p: sum(ci * pi for ci, pi in zip(c, p))
    return ScalarField("linear", len(c), f, f, lambda p: c)


def constant_field(value, dim=2):
    return ScalarField("constant", dim, lambda p: value, lambda z: complex(value))


def combo_field(alpha, F, beta, G):
    return ScalarField(
        "combo",
        F.dim,
        lambda p: alpha * F.real_fn(p) + beta * G.real_fn(p),
        lambda z: alpha * F.complex_fn(z) + beta * G.complex_fn(z),
    )


def angle_deg(a, b):
    a = np.asarray(a, float) / np.linalg.norm(a)
    b = np.asarray(b, float) / np.linalg.norm(b)
    return math.degrees(math.acos(max(-1.0, min(1.0, float(a @ b)))))


@pytest.fixture
def rng():
    return np.random.default_rng(20261019)


_ACCEPTANCE = []


@pytest.fixture
def record():
    """Log one acceptance line; printed in the terminal summary."""

    def _record(criterion, ok, detail=""):
        _ACCEPTANCE.append((criterion, bool(ok), detail))
        return ok

    return _record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, ok, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {criterion}  {detail}")
