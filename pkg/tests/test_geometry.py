import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wedgebound.geometry import (
    RHO_MAX,
    WedgeParam,
    big_z,
    big_z_inverse,
    cal_f,
    comparison_f,
    comparison_f_product,
    half_plane_map,
    upsilon,
    weight,
)
from wedgebound.inequalities import moment_inequality_ratio, weight_laplacian
from wedgebound.specfun import DomainError

DELTA = math.acos(-1 / math.sqrt(3))
mpmath.mp.dps = 30


def mp_big_z(r, alpha):
    """Z(r) = 2 X^(a+1)/(a+1) 2F1(a, a+1; a+2; X), X = sin^2(r/2)."""
    X = mpmath.sin(mpmath.mpf(r) / 2) ** 2
    return float(2 * X ** (alpha + 1) / (alpha + 1) * mpmath.hyp2f1(alpha, alpha + 1, alpha + 2, X))


def test_wedge_param():
    assert WedgeParam(1.5).opening == pytest.approx(2 * math.pi / 3)
    with pytest.raises(DomainError):
        WedgeParam(1.0)


@pytest.mark.parametrize("alpha", [1.1, 1.5, 2.0, 4.0])
def test_weight_at_diagonal(alpha):
    assert weight(math.pi / 2, math.pi / (2 * alpha), alpha) == pytest.approx(1.0, abs=1e-14)


def test_weight_edges_vanish():
    assert weight(1.3, 0.0, 1.5) == 0.0
    assert weight(1.3, 2 * math.pi / 3, 1.5) == 0.0


def test_weight_value():
    assert weight(math.pi / 3, math.pi / 3, 1.5) == pytest.approx(3 ** -0.75, abs=1e-12)


def test_weight_domain():
    with pytest.raises(DomainError):
        weight(math.pi, 0.3, 1.5)
    with pytest.raises(DomainError):
        weight(1.0, 3.0, 1.5)


def test_cal_f_values():
    assert cal_f(0.0, 1.5) == 0.0
    assert cal_f(math.pi / 2, 1.5) == pytest.approx(1.0, abs=1e-14)
    # tan^2(r/2) = (1 - cos r)/(1 + cos r) with cos(delta) = -1/sqrt(3)
    c = -1 / math.sqrt(3)
    assert cal_f(DELTA, 1.5) == pytest.approx(((1 - c) / (1 + c)) ** 1.5 * math.sqrt(1 - c * c), rel=1e-13)
    assert cal_f(DELTA, 1.5) == pytest.approx(5.88675135, abs=1e-8)
    with pytest.raises(DomainError):
        cal_f(math.pi, 1.5)


def test_big_z_values():
    assert big_z(0.0, 1.5) == 0.0
    assert big_z(math.pi / 2, 1.5) == pytest.approx(5 - 1.5 * math.pi, abs=1e-12)
    # (3/pi) I(S(delta)) with the tabulated moment
    assert big_z(DELTA, 1.5) == pytest.approx(3 / math.pi * 2.07876577, abs=1e-8)


@pytest.mark.parametrize("alpha", [1.2, 1.5, 2.0, 3.0, 5.5])
@pytest.mark.parametrize("r", [0.05, 0.5, 1.5, 2.5, 3.0, 3.14])
def test_big_z_against_mpmath(alpha, r):
    ref = mp_big_z(r, alpha)
    assert big_z(r, alpha, method="quad") == pytest.approx(ref, rel=1e-11, abs=1e-12)


def test_closed_form_matches_quadrature():
    r = np.linspace(0.01, 3.1, 40)
    assert np.allclose(big_z(r, 1.5, method="closed"), big_z(r, 1.5, method="quad"), rtol=1e-11, atol=1e-12)
    with pytest.raises(DomainError):
        big_z(1.0, 2.0, method="closed")


def test_big_z_array_unsorted():
    r = np.array([2.0, 0.5, 1.0, 0.5])
    vals = big_z(r, 2.5)
    assert np.allclose(vals, [big_z(x, 2.5) for x in r], rtol=1e-11)


def test_big_z_rejects_near_pi():
    with pytest.raises(DomainError):
        big_z(RHO_MAX + 1e-9, 1.5)


def test_big_z_inverse_values():
    assert big_z_inverse(0.0, 1.5) == 0.0
    assert big_z_inverse(0.2876110196, 1.5) == pytest.approx(math.pi / 2, abs=1e-9)
    assert big_z_inverse(3 / math.pi * 1.88896324, 1.5) == pytest.approx(2.15399460, abs=1e-8)
    with pytest.raises(DomainError):
        big_z_inverse(-1.0, 1.5)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.1, 3.0), st.sampled_from([1.2, 1.5, 2.0, 3.0]))
def test_z_round_trip(r, alpha):
    assert big_z_inverse(big_z(r, alpha), alpha) == pytest.approx(r, abs=1e-10)


def test_z_strictly_increasing():
    vals = big_z(np.linspace(0.0, 3.1, 300), 2.0)
    assert np.all(np.diff(vals) > 0)


def test_upsilon():
    assert upsilon(0.0, 1.5) == 0.0
    assert upsilon(0.2876110196, 1.5) == pytest.approx(1.0, abs=1e-9)
    assert upsilon(0.5, 2) < upsilon(1.0, 2)


def test_comparison_f_values():
    assert comparison_f(0.0, 1.5) == 0.0
    assert comparison_f(math.pi / 2, 1.5) == pytest.approx(1.0, abs=1e-14)
    assert comparison_f(math.pi / 3, 1.5) == pytest.approx(cal_f(math.pi / 3, 1.5) ** (1 / 3), rel=1e-14)
    # F(pi/3) = 3^(-3/2) (sqrt(3)/2) = 1/6
    assert comparison_f(math.pi / 3, 1.5) == pytest.approx(6 ** (-1 / 3), rel=1e-14)


@settings(max_examples=50, deadline=None)
@given(st.floats(1e-3, math.pi - 1e-3), st.floats(1.01, 6.0))
def test_f_cubed_is_cal_f(rho, alpha):
    assert comparison_f(rho, alpha) ** 3 == pytest.approx(cal_f(rho, alpha), rel=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.floats(1e-2, math.pi - 1e-2), st.floats(1.01, 6.0))
def test_product_form_and_bound(rho, alpha):
    h = 1e-6
    df = (comparison_f(rho + h, alpha) - comparison_f(rho - h, alpha)) / (2 * h)
    product = comparison_f_product(rho, alpha)
    assert comparison_f(rho, alpha) ** 2 * df == pytest.approx(product, rel=1e-7)
    assert product <= alpha * math.tan(rho / 2) ** (2 * alpha)


def test_half_plane_map_upper_half():
    rho = np.linspace(0.1, 3.0, 30)
    theta = np.linspace(0.01, 2 * math.pi / 3 - 0.01, 30)
    x, y = half_plane_map(rho, theta, 1.5)
    assert np.all(y > 0)
    assert np.allclose(np.hypot(x, y), comparison_f(rho, 1.5))


@settings(max_examples=200, deadline=None)
@given(
    st.floats(0.05, 3.0), st.floats(0.02, 0.98), st.floats(-1, 1), st.floats(-1, 1),
    st.sampled_from([1.01, 1.5, 2.0, 3.0, 5.0]),
)
def test_pointwise_metric_comparison(rho, frac, d_rho, d_theta, alpha):
    if max(abs(d_rho), abs(d_theta)) < 1e-6:
        return
    theta = frac * math.pi / alpha
    assert moment_inequality_ratio(alpha, rho, theta, d_rho, d_theta) >= 1 - 1e-7


@pytest.mark.parametrize("alpha", [1.5, 2.0, 3.0])
def test_weight_harmonic_second_order(alpha):
    rho = np.array([0.5, 1.0, 1.7, 2.4])
    theta = np.array([0.2, 0.5, 0.9, 1.2]) * math.pi / alpha / 1.4
    e1 = np.max(np.abs(weight_laplacian(alpha, rho, theta, 1e-2)))
    e2 = np.max(np.abs(weight_laplacian(alpha, rho, theta, 5e-3)))
    assert e2 < e1
    assert math.log2(e1 / e2) == pytest.approx(2.0, abs=0.3)
