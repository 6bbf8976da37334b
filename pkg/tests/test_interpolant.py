import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import fd_derivative
from trigherm.experiments import test_function
from trigherm.hermite_basis import berrut_basis, normalize_vanishing, stack_vanishing, trig_vanishing
from trigherm.interpolant import (
    HermiteData,
    LagrangePropertyError,
    NumericalBreakdownError,
    build_hermite,
    derivatives_at_nodes,
    evaluate,
    fornberg_weights,
    generic_build,
)
from trigherm.nodes import NodeSet, equidistant_nodes, seam_angle
from trigherm.trig_core import TWO_PI

F1 = test_function("f1")
F2 = test_function("f2")


def perturbed_nodes(n, seed):
    rng = np.random.default_rng(seed)
    return NodeSet.from_unsorted(TWO_PI * (np.arange(n) + 0.3 * rng.uniform(-1, 1, n)) / n)


def const_data(n, m):
    v = np.zeros((n, m + 1))
    v[:, 0] = 1.0
    return v


@settings(max_examples=25)
@given(st.integers(3, 12), st.integers(0, 4), st.integers(0, 10_000))
def test_hermite_conditions_via_matrices(n, m, seed):
    ns = perturbed_nodes(n, seed)
    interp = build_hermite(ns, F2.hermite_data(ns, m))
    for k in range(m + 1):
        want = F2.derivative(k, ns.angles)
        assert np.allclose(derivatives_at_nodes(interp, k), want, rtol=1e-7, atol=1e-7 * 10**k)


@pytest.mark.parametrize("n", [5, 6, 9, 10])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_hermite_conditions_via_fd_including_node_at_zero(n, m):
    ns = equidistant_nodes(n)
    interp = build_hermite(ns, F1.hermite_data(ns, m))
    h = 0.02 * TWO_PI / n
    for x in ns.angles:
        for k in range(m + 1):
            got = fd_derivative(lambda t: evaluate(interp, t), x, k, h, radius=8)
            assert abs(got - F1.derivative(k, x)) < 1e-6 * max(1.0, abs(F1.derivative(k, x)))


@pytest.mark.parametrize("n", [5, 6, 7, 8])
@pytest.mark.parametrize("m", [0, 1, 2, 3, 4])
@pytest.mark.parametrize("strategy", ["barycentric", "extended"])
def test_constant_reproduction(n, m, strategy):
    ns = perturbed_nodes(n, n * m)
    interp = build_hermite(ns, const_data(n, m), eval_strategy=strategy)
    assert np.allclose(evaluate(interp, np.linspace(0, TWO_PI, 2000)), 1.0, atol=1e-10)
    assert np.allclose(interp.g_const[:, 1:], 0.0, atol=1e-9)


@settings(max_examples=20)
@given(st.integers(3, 10), st.integers(0, 3), st.integers(0, 10_000))
def test_strategies_agree(n, m, seed):
    ns = perturbed_nodes(n, seed)
    interp = build_hermite(ns, F1.hermite_data(ns, m))
    t = np.linspace(0.01, TWO_PI - 0.01, 257)
    a, b = evaluate(interp, t), evaluate(interp.with_strategy("extended"), t)
    assert np.allclose(a, b, rtol=1e-9, atol=1e-9)


@given(st.integers(3, 10), st.integers(0, 3), st.floats(-20, 20))
def test_two_pi_periodic(n, m, t):
    ns = equidistant_nodes(n)
    interp = build_hermite(ns, F2.hermite_data(ns, m))
    assert np.allclose(interp(t), interp(t + TWO_PI), atol=1e-10)


def test_node_hits_return_data():
    ns = perturbed_nodes(7, 1)
    interp = build_hermite(ns, F1.hermite_data(ns, 2))
    assert np.array_equal(evaluate(interp, ns.angles), interp.data.values[:, 0])
    assert np.array_equal(evaluate(interp, ns.angles + TWO_PI), interp.data.values[:, 0])


def test_jump_at_seam_is_tiny_and_smooth_at_zero():
    ns = equidistant_nodes(40)
    interp = build_hermite(ns, F1.hermite_data(ns, 3))
    s = interp.seam
    assert np.isclose(s, seam_angle(ns))
    jump = abs(interp(s - 1e-12)[0] - interp(s + 1e-12)[0])
    assert jump < 1e-10
    assert abs(interp(-1e-9)[0] - interp(1e-9)[0]) < 1e-7


def test_seam_choice_does_not_change_accuracy_much():
    ns = equidistant_nodes(20)
    t = (np.arange(5000) + 0.5) * TWO_PI / 5000
    errs = [
        np.max(np.abs(evaluate(build_hermite(ns, F1.hermite_data(ns, 2), seam=s), t) - F1(t)))
        for s in (seam_angle(ns), 0.5 * TWO_PI / 20 + 7 * TWO_PI / 20)
    ]
    assert max(errs) < 1e-4


def test_seam_on_node_is_one_sided():
    ns = equidistant_nodes(6)
    interp = build_hermite(ns, F1.hermite_data(ns, 1), seam=ns.angles[2])
    x, h = ns.angles[2], 1e-4
    right = (interp(x + h)[0] - interp(x)[0]) / h
    left = (interp(x)[0] - interp(x - h)[0]) / h
    assert abs(interp(x - 1e-12)[0] - interp(x + 1e-12)[0]) < 1e-9
    assert abs(right - F1.derivative(1, x)) < 1e-2
    assert abs(left - F1.derivative(1, x)) > 1e-2


def test_input_validation():
    ns = equidistant_nodes(5)
    with pytest.raises(ValueError):
        HermiteData(np.full((5, 2), np.nan))
    with pytest.raises(ValueError):
        HermiteData(np.ones((5, 2, 2)))
    with pytest.raises(ValueError):
        build_hermite(ns, np.ones((4, 2)))
    with pytest.raises(ValueError):
        build_hermite(ns, np.ones((5, 10)))
    with pytest.raises(ValueError):
        build_hermite(ns, np.ones((5, 2)), method="magic")
    with pytest.raises(ValueError):
        build_hermite(ns, np.ones((5, 2)), eval_strategy="linear")
    interp = build_hermite(ns, np.ones(5))
    assert interp.m == 0
    with pytest.raises(ValueError):
        evaluate(interp, 0.1, strategy="linear")
    with pytest.raises(ValueError):
        interp.with_strategy("linear")
    with pytest.raises(ValueError):
        derivatives_at_nodes(interp, -1)


def test_huge_data_reports_breakdown():
    ns = equidistant_nodes(6)
    interp = build_hermite(ns, np.full((6, 3), 1e307))
    with np.errstate(all="ignore"), pytest.raises(NumericalBreakdownError):
        evaluate(interp, np.linspace(0.1, 6.0, 50))


def test_hermite_data_from_function():
    ns = equidistant_nodes(4)
    d = HermiteData.from_function(ns, lambda k, t: np.cos(t + k * np.pi / 2), 2)
    assert d.n == 4 and d.m == 2
    assert np.allclose(d.values[:, 1], -np.sin(ns.angles))


def test_fornberg_weights_known_stencils():
    assert np.allclose(fornberg_weights(np.array([-1.0, 0.0, 1.0]), 2), [1, -2, 1])
    assert np.allclose(fornberg_weights(np.array([-1.0, 0.0, 1.0]), 1), [-0.5, 0, 0.5])
    assert np.allclose(fornberg_weights(np.array([0.0, 1.0, 2.0]), 1), [-1.5, 2, -0.5])


@pytest.mark.parametrize("m", [1, 2])
def test_generic_build_over_berrut_matches_trig_interpolant(m):
    ns = perturbed_nodes(7, m)
    data = F1.hermite_data(ns, m)
    # evaluate inside the node hull so the raw and seamed windows coincide
    t = np.linspace(ns.angles[0] + 0.01, ns.angles[-1] - 0.01, 200)
    generic = generic_build(berrut_basis(ns), trig_vanishing(ns), data, ns.angles)
    trig = build_hermite(ns, data, seam=0.5 * (ns.angles[-1] + ns.angles[0] + TWO_PI) % TWO_PI)
    assert np.allclose(generic(t), evaluate(trig, t), atol=1e-6)


def test_generic_build_with_polynomial_basis_gives_hermite_polynomial():
    x = np.array([0.0, 0.7, 1.5])

    def basis(t):
        t = np.atleast_1d(t)
        return np.stack(
            [np.prod([(t - x[m]) / (x[k] - x[m]) for m in range(3) if m != k], axis=0) for k in range(3)], axis=1
        )

    vanish = stack_vanishing([normalize_vanishing(lambda t, c=c: t - c, c, dh=lambda t: np.ones_like(t)) for c in x])
    p = np.polynomial.Polynomial([0.3, -1.0, 0.5, 2.0, 0.0, -0.7])  # degree 5 = 2*3 - 1
    data = np.c_[p(x), p.deriv()(x)]
    r = generic_build(basis, vanish, data, x)
    t = np.linspace(-0.2, 1.8, 50)
    assert np.allclose(r(t), p(t), atol=1e-6)


def test_generic_build_rejects_non_lagrange_basis():
    x = np.array([0.0, 1.0, 2.0])
    with pytest.raises(LagrangePropertyError):
        generic_build(lambda t: np.ones((np.size(t), 3)) / 3, lambda t: np.zeros((np.size(t), 3)), np.ones(3), x)
    with pytest.raises(ValueError):
        generic_build(lambda t: np.eye(3), lambda t: np.zeros((3, 3)), np.ones(4), x)
