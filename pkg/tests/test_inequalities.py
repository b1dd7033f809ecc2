import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wedgebound.domains import random_star_domain, sector, tetra_triangle
from wedgebound.geometry import big_z
from wedgebound.inequalities import (
    IntervalSet,
    check_desiderata,
    check_szego,
    isoperimetric_deficit,
    isoperimetric_sides,
    random_interval_set,
    random_szego_instance,
)
from wedgebound.numerics import rng_stream

psi_shaped = lambda x: np.tan(np.asarray(x) / 2) ** 3 * np.sin(x)
Psi_shaped = lambda x: big_z(x, 1.5)
Phi_cbrt = lambda y: 0.75 * np.cbrt(y) ** 4


def test_interval_set_validation():
    with pytest.raises(ValueError):
        IntervalSet(((1.0, 0.5),))
    with pytest.raises(ValueError):
        IntervalSet(((0.0, 1.0), (0.5, 2.0)))
    with pytest.raises(ValueError):
        IntervalSet(((-1.0, 1.0),))
    E = IntervalSet(((0.0, 1.0), (1.5, 2.0)))
    assert E.measure == pytest.approx(1.5)
    assert E.symmetric_difference_from_initial() == pytest.approx(1.0)


def test_initial_interval_detection():
    assert IntervalSet(((0.0, 0.7),)).is_initial_interval()
    assert IntervalSet(((0.0, 0.4), (0.4, 0.7))).is_initial_interval()
    assert not IntervalSet(((1e-6, 0.7),)).is_initial_interval()


def test_szego_hand_example():
    res = check_szego(lambda x: np.ones_like(x), lambda z: z, IntervalSet(((1.0, 2.0),)))
    assert res.lhs == pytest.approx(0.5, abs=1e-12)
    assert res.rhs == pytest.approx(1.5, abs=1e-12)
    assert res.ok and not res.equality


def test_szego_primitives_by_quadrature():
    E = IntervalSet(((0.2, 0.9), (1.3, 2.4)))
    a = check_szego(psi_shaped, np.cbrt, E, 1e-10, Psi=Psi_shaped, Phi=Phi_cbrt)
    b = check_szego(psi_shaped, np.cbrt, E, 1e-10)
    assert a.lhs == pytest.approx(b.lhs, abs=1e-10)
    assert a.rhs == pytest.approx(b.rhs, abs=1e-10)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.05, 2.9))
def test_szego_equality_on_initial_interval(R):
    res = check_szego(psi_shaped, np.cbrt, IntervalSet(((0.0, R),)), 1e-10, Psi=Psi_shaped, Phi=Phi_cbrt)
    assert res.equality


@settings(max_examples=40, deadline=None)
@given(st.floats(0.5, 1.5), st.floats(0.02, 1.0), st.floats(0.05, 0.5))
def test_szego_strict_off_initial_interval(first, gap, second):
    # psi ~ x^5/32 near 0, so the gap must sit where psi is not negligible
    E = IntervalSet(((0.0, first), (first + gap, first + gap + second)))
    res = check_szego(psi_shaped, np.cbrt, E, 1e-10, Psi=Psi_shaped, Phi=Phi_cbrt)
    assert res.ok and not res.equality


def test_szego_shaped_random_sets():
    root = rng_stream(3)
    for i in range(100):
        E = random_interval_set(root.substream(i), 3.0)
        res = check_szego(psi_shaped, np.cbrt, E, 1e-10, Psi=Psi_shaped, Phi=Phi_cbrt)
        assert res.ok
        assert res.equality == E.is_initial_interval()


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32))
def test_szego_random_polynomials(seed):
    inst = random_szego_instance(rng_stream(seed))
    assert np.all(inst.psi(np.linspace(0, inst.omega, 50)) >= 0)
    assert np.all(inst.phi.deriv()(np.linspace(0, 50, 50)) > 0)
    res = inst.run()
    assert res.ok
    assert res.equality == inst.E.is_initial_interval()


@pytest.mark.parametrize("r", [0.8, math.pi / 2, 2.0])
@pytest.mark.parametrize("alpha", [1.5, 2.0])
def test_sector_deficit_vanishes(r, alpha):
    assert abs(isoperimetric_deficit(sector(r, alpha), 1e-10)) <= 1e-9


def test_nested_sectors_both_sides_grow():
    sides = [isoperimetric_sides(sector(r, 2.0)) for r in np.linspace(0.3, 2.8, 8)]
    boundary = [s[0] for s in sides]
    assert np.all(np.diff(boundary) > 0)
    assert all(abs(b - lb) <= 1e-9 * max(1.0, b) for b, lb in sides)


def test_tetra_deficit_positive():
    assert isoperimetric_deficit(tetra_triangle()) > 1e-3


def test_random_domain_deficits():
    root = rng_stream(21)
    deficits = []
    for i in range(40):
        alpha = (1.5, 2.0, 3.0)[i % 3]
        G = random_star_domain(root.substream(i), alpha)
        boundary, bound = isoperimetric_sides(G)
        deficits.append((boundary - bound) / max(1.0, boundary))
    deficits = np.array(deficits)
    assert deficits.min() >= -1e-8
    assert np.mean(deficits > 1e-9) >= 0.95


@pytest.mark.parametrize("alpha", [1.01, 1.5, 2.0, 5.0])
def test_desiderata(alpha):
    rep = check_desiderata(alpha, 1000)
    assert rep.ok
    assert rep.cube_max_rel_error <= 1e-10
    assert rep.slack_min >= 0


def test_desiderata_tightest_case():
    # slack (alpha - (2 alpha + cos)/3)/alpha is smallest as rho -> 0
    rep = check_desiderata(1.01, 1000)
    assert rep.slack_min == pytest.approx((1.01 - (2.02 + 1) / 3) / 1.01, abs=1e-4)
