import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from uniexp.core import (
    UnitaryBarycentric,
    UnitaryPoleForm,
    derived_weights,
    eval_barycentric,
    eval_pole_form,
    phase_function,
    poles,
    scan_phase_error,
    structural_checks,
    transform_to_interval,
)
from uniexp.errors import (
    BranchWrapWarning,
    CoincidentNodeError,
    IntervalMismatchError,
    PoleHitError,
    UniexpError,
)
from uniexp.interp import chebyshev_nodes, interpolate_chebyshev

from conftest import solve


def condition(b, x):
    # sum |w_j / d_j| / |sum w_j / d_j|: amplification of rounding near poles close to the axis
    d = x[:, None] - b.support_nodes
    w = b.weights
    return np.sum(np.abs(w / d), axis=1) / np.abs((w / d).sum(axis=1))


def one(omega=1.0):
    return UnitaryBarycentric(omega, [0.0], [1.0])


@st.composite
def barycentric(draw, max_n=6):
    n = draw(st.integers(0, max_n))
    s = np.sort(draw(st.lists(st.floats(-1, 1), min_size=n + 1, max_size=n + 1, unique=True)))
    if n and np.min(np.diff(s)) < 1e-3:
        s = chebyshev_nodes(n + 1)
    v = draw(st.lists(st.floats(-1, 1), min_size=n + 1, max_size=n + 1))
    if np.linalg.norm(v) < 1e-3:
        v = np.ones(n + 1)
    omega = draw(st.floats(0.01, (n + 1) * np.pi))
    return UnitaryBarycentric(omega, s, v)


def test_derived_weights_examples():
    assert derived_weights(UnitaryBarycentric(3.0, [0.0], [1.0])) == pytest.approx([1.0])
    assert derived_weights(UnitaryBarycentric(np.pi, [1.0], [1.0])) == pytest.approx([-1j])
    # weights are normalized on construction, so compare the direction of 2 e^{-0.5i}
    w = derived_weights(UnitaryBarycentric(2.0, [0.5], [2.0]))
    assert 2 * w[0] == pytest.approx(1.7552 - 0.9589j, abs=1e-4)


def test_constant_and_support_hits():
    assert eval_barycentric(one(3.0), 0.3) == pytest.approx(1.0)
    b = interpolate_chebyshev(3, 2.0)
    for s in b.support_nodes:
        assert eval_barycentric(b, s) == pytest.approx(np.exp(2j * s), abs=1e-15)
        assert b.phase_error(np.array([s]))[0] == 0.0


def test_invalid_construction():
    with pytest.raises(CoincidentNodeError):
        UnitaryBarycentric(1.0, [0.1, 0.1], [1, 1])
    with pytest.raises(UniexpError):
        UnitaryBarycentric(1.0, [0.0, 0.5], [0.0, 0.0])
    with pytest.raises(UniexpError):
        UnitaryBarycentric(1.0, [0.0, 1.5], [1.0, 1.0])


@settings(max_examples=60, deadline=None)
@given(barycentric())
def test_unitarity_property(b):
    x = np.linspace(-1, 1, 10000)
    assert np.max(np.abs(np.abs(b(x)) - 1)) <= 5e-15 * (b.n + 1)


@settings(max_examples=60, deadline=None)
@given(barycentric(), st.floats(-3, 3).filter(lambda c: abs(c) > 1e-3))
def test_scaling_weights_leaves_function_unchanged(b, c):
    # equal up to the rounding of the weight normalization
    x = np.linspace(-1, 1, 101)
    x = x[np.min(np.abs(x[:, None] - b.support_nodes), axis=1) > 1e-12]
    tol = 8 * np.finfo(float).eps * (b.n + 1) * np.maximum(1.0, condition(b, x))
    assert np.all(np.abs(b(x) - b.scaled(c)(x)) <= tol)


@settings(max_examples=60, deadline=None)
@given(barycentric())
def test_phase_identity(b):
    x = np.linspace(-1, 1, 1001)
    x = x[np.min(np.abs(x[:, None] - b.support_nodes), axis=1) > 1e-12]
    direct = np.abs(b(x) - np.exp(1j * b.omega * x))
    tol = 1e-14 * np.maximum(1.0, condition(b, x))
    assert np.all(np.abs(direct - b.error(x)) <= tol)


def test_phase_error_examples():
    assert one(1.0).phase_error(np.array([0.0, 0.5])) == pytest.approx([0.0, -0.5])
    # one pole at 2: g(1) = 2 arctan(1/2), so the phase error vanishes at x=1 for that omega
    p = UnitaryPoleForm([2.0])
    omega = 2 * np.arctan(0.5)
    assert phase_function(p, 1.0) - omega == pytest.approx(0.0, abs=1e-15)


def test_pole_form_examples():
    assert eval_pole_form(UnitaryPoleForm([]), 0.7 + 2j) == 1
    p = UnitaryPoleForm([2.0])
    assert eval_pole_form(p, 0.0) == pytest.approx(1.0)
    assert eval_pole_form(p, 2j) == pytest.approx(1j)
    with pytest.raises(PoleHitError):
        eval_pole_form(p, 2.0)
    assert phase_function(UnitaryPoleForm([]), 0.3) == 0.0
    assert phase_function(p, 2.0) == pytest.approx(np.pi / 2)


def test_phase_function_odd_for_conjugate_pairs():
    p = UnitaryPoleForm([1 + 0.5j, 1 - 0.5j, 3.0])
    x = np.linspace(-1, 1, 51)
    assert np.allclose(phase_function(p, -x), -phase_function(p, x), atol=1e-15)


def test_irreducibility():
    assert UnitaryPoleForm([1.0, 2 + 1j]).is_irreducible()
    assert not UnitaryPoleForm([1 + 1j, -1 + 1j]).is_irreducible()


def test_poles_degree_zero_and_one():
    assert len(poles(one())) == 0
    b = UnitaryBarycentric(1.3, [-0.4, 0.7], [0.8, 0.3])
    w = b.weights
    s = b.support_nodes
    # D(x) = (w0 (x - s1) + w1 (x - s0)) / ((x - s0)(x - s1)); root of the linear numerator
    lam = (w[0] * s[1] + w[1] * s[0]) / (w[0] + w[1])
    assert poles(b)[0] == pytest.approx(1j * lam, abs=1e-10)


@pytest.mark.parametrize("n,omega", [(2, 1.0), (4, 3.0), (6, 10.0), (8, 20.0)])
def test_pole_form_round_trip(n, omega):
    b = interpolate_chebyshev(n, omega)
    p = UnitaryPoleForm.from_barycentric(b)
    x = np.linspace(-1, 1, 301)
    assert np.max(np.abs(eval_pole_form(p, 1j * x) - b(x))) <= 1e-8


def test_zero_mirror_of_poles():
    b = interpolate_chebyshev(3, 2.0)
    rng = np.random.default_rng(0)
    for s in b.poles():
        u = np.exp(2j * np.pi * rng.random())
        near = abs(b.at(-np.conj(s) + 1e-3 * u))
        far = abs(b.at(-np.conj(s) + 1e-2 * u))
        assert near / far == pytest.approx(0.1, rel=0.05)


def test_branch_wrap_warning():
    b = one(10.0)
    with pytest.warns(BranchWrapWarning):
        scan_phase_error(b, np.linspace(-1, 1, 200))


def test_transform_to_interval():
    b = interpolate_chebyshev(3, 1.0)
    t = transform_to_interval(b, -1.0, 1.0)
    assert t.gamma == 0 and t.scale == 1.0
    c = interpolate_chebyshev(3, 1.5)
    t = transform_to_interval(c, 0.0, 3.0)
    assert t(np.array([1.5]))[0] == pytest.approx(np.exp(1.5j) * c(0.0))
    t = transform_to_interval(b, 2.0, 4.0)
    y = np.linspace(2, 4, 1000)
    e1 = np.max(np.abs(t(y) - np.exp(1j * y)))
    e2 = np.max(np.abs(b(t.to_unit(y)) - np.exp(1j * t.to_unit(y))))
    assert abs(e1 - e2) <= 1e-14
    with pytest.raises(IntervalMismatchError):
        transform_to_interval(b, 0.0, 5.0)


def test_structural_checks_examples():
    rep = structural_checks(one())
    assert rep.unitarity_defect <= np.finfo(float).eps and rep.symmetry_defect == 0
    assert rep.stability_ok
    assert structural_checks(solve(4, 12.0).approximant).stability_ok
    assert structural_checks(solve(5, 2.85).approximant).symmetry_defect <= 1e-12


def test_principal_half_angle_on_the_imaginary_axis():
    from uniexp.core import principal_half_angle
    assert principal_half_angle(np.array([1.0, -1.0]), np.array([0.0, 0.0])) == pytest.approx(
        [np.pi / 2, -np.pi / 2])
    assert principal_half_angle(np.array([0.0]), np.array([np.inf]))[0] == 0.0


def test_pole_on_axis_gives_maximal_error():
    # mirrored nodes with equal rotated weights: the real rotated sum vanishes
    # at 0, so r(0) = -1 and the error there is 2
    b = UnitaryBarycentric(1.0, chebyshev_nodes(4), np.ones(4))
    x = np.array([0.0])
    assert b(x)[0] == pytest.approx(-1.0)
    assert b.error(x)[0] == pytest.approx(2.0)
