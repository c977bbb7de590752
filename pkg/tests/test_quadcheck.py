import math

import numpy as np
import pytest

from zetagaps.fracpoly import DomainError, FracPoly, make
from zetagaps.hfunc import CoeffScheme, h_value
from zetagaps.quadcheck import (
    beta_kernel_rule,
    dimreduct_check,
    gauss_legendre,
    h_value_numeric,
)

from conftest import HB_FIELDS


# ---------------------------------------------------------------- Gauss-Legendre


def test_order_two_classical_values():
    rule = gauss_legendre(2)
    assert rule.nodes == pytest.approx([-1 / math.sqrt(3), 1 / math.sqrt(3)], abs=1e-15)
    assert rule.weights == pytest.approx([1.0, 1.0], abs=1e-15)


def test_weights_sum_to_two():
    for order in (2, 5, 16, 48, 64, 127, 128):
        rule = gauss_legendre(order)
        assert abs(float(np.sum(rule.weights)) - 2.0) < 1e-13
        assert np.all(rule.weights > 0)
        assert np.all((rule.nodes > -1) & (rule.nodes < 1))


def test_nodes_exactly_symmetric():
    for order in (7, 48):
        rule = gauss_legendre(order)
        assert np.array_equal(rule.nodes, -rule.nodes[::-1])
        assert np.array_equal(rule.weights, rule.weights[::-1])


def test_degree_of_exactness():
    # int_0^1 x^7 dx = 1/8 with an order-4 rule (exact through degree 7)
    rule = gauss_legendre(4)
    x = (rule.nodes + 1.0) / 2.0
    w = rule.weights / 2.0
    assert float(w @ x**7) == pytest.approx(1.0 / 8.0, rel=1e-15)


def test_order_bounds():
    for order in (0, 1, 129):
        with pytest.raises(ValueError):
            gauss_legendre(order)


def test_beta_kernel_rule_both_methods():
    # int_0^1 (1-t)^(a-1) t^3 dt = B(a, 4)
    from scipy.special import beta as scipy_beta

    a = 1.3924
    expect = scipy_beta(a, 4.0)
    for method, tol in (("jacobi", 1e-14), ("power", 1e-5)):
        t, w = beta_kernel_rule(a, 48, method)
        assert float(w @ t**3) == pytest.approx(expect, rel=tol)


# ---------------------------------------------------------------- h agreement


def test_components_match_exact_on_reference_rows(rows):
    for preset in rows:
        exact = h_value(preset.scheme, preset.c)
        numeric = h_value_numeric(preset.scheme, preset.c, order=48)
        for f in HB_FIELDS:
            assert getattr(exact, f) == pytest.approx(
                getattr(numeric, f), rel=1e-7
            ), f"{preset.name}: {f}"
        assert exact.h == pytest.approx(numeric.h, abs=1e-9)


def test_power_method_agrees_coarsely(row1):
    # the power-substitution route converges algebraically; regression-guard
    # it at the level it actually achieves
    exact = h_value(row1.scheme, row1.c)
    numeric = h_value_numeric(row1.scheme, row1.c, order=48, method="power")
    for f in HB_FIELDS:
        assert getattr(exact, f) == pytest.approx(getattr(numeric, f), rel=1e-4)


def test_doubling_order_changes_little(row1, row3):
    for preset in (row1, row3):
        h32 = h_value_numeric(preset.scheme, preset.c, order=32)
        h64 = h_value_numeric(preset.scheme, preset.c, order=64)
        for f in HB_FIELDS:
            v32, v64 = getattr(h32, f), getattr(h64, f)
            assert abs(v32 - v64) <= 1e-9 * abs(v64), f"{preset.name}: {f}"


def test_zero_p_components_match_exactly(row1):
    scheme = CoeffScheme(
        r=row1.scheme.r, f1=row1.scheme.f1, f1t=row1.scheme.f1t, P=FracPoly.zero()
    )
    numeric = h_value_numeric(scheme, row1.c, order=24)
    for f in ("d2", "d31", "d32", "n2", "n31", "n32", "n41", "n42", "n43"):
        assert getattr(numeric, f) == 0.0


def test_unit_scheme_d1_both_paths(plain_scheme):
    exact = h_value(plain_scheme, 0.6)
    numeric = h_value_numeric(plain_scheme, 0.6, order=24)
    assert exact.d1 == pytest.approx(1.0, rel=1e-14)
    assert numeric.d1 == pytest.approx(1.0, rel=1e-13)


def test_h_value_numeric_validation(row1):
    with pytest.raises(ValueError):
        h_value_numeric(row1.scheme, row1.c, order=8)
    with pytest.raises(DomainError):
        h_value_numeric(row1.scheme, 1.2)


# ---------------------------------------------------------------- reduction identity


def test_dimreduct_simplest_case():
    lhs, rhs = dimreduct_check(1, (1,), make([(1.0, 0.0)]), math.e)
    assert lhs == pytest.approx(0.5, abs=1e-12)
    assert rhs == pytest.approx(0.5, abs=1e-12)


def test_dimreduct_a2():
    lhs, rhs = dimreduct_check(1, (2,), make([(1.0, 0.0)]), math.e)
    assert lhs == pytest.approx(rhs, rel=1e-9)


def test_dimreduct_two_levels_cubic():
    poly = make([(0.3, 0.0), (-1.2, 1.0), (0.5, 2.0), (2.0, 3.0)])
    lhs, rhs = dimreduct_check(2, (1, 2), poly, math.e**3)
    assert lhs == pytest.approx(rhs, rel=1e-9)


def test_dimreduct_randomized():
    rng = np.random.default_rng(17)
    for _ in range(20):
        m = int(rng.integers(1, 4))
        a = [int(rng.integers(1, 4)) for _ in range(m)]
        poly = make([(float(rng.uniform(-2, 2)), float(k)) for k in range(5)])
        d_limit = float(rng.uniform(1.2, math.e**4))
        lhs, rhs = dimreduct_check(m, a, poly, d_limit)
        assert abs(lhs - rhs) <= 1e-9 * max(abs(rhs), 1e-12)


def test_dimreduct_validation():
    one = make([(1.0, 0.0)])
    with pytest.raises(ValueError):
        dimreduct_check(0, (), one, math.e)
    with pytest.raises(ValueError):
        dimreduct_check(2, (1,), one, math.e)
    with pytest.raises(ValueError):
        dimreduct_check(1, (1,), one, 0.5)
