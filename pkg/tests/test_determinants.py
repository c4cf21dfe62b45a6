import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from gupthermal import determinants as det
from gupthermal.exceptions import DomainError

AB = det.AbPair(1.0, 0.5)
PAIRS = [(1.0, 0.5), (1.3, 0.2), (0.7, 0.65), (2.5, 1.0), (5.0, 4.9)]


@st.composite
def ab_pairs(draw):
    b = draw(st.floats(0.01, 5.0))
    gap = draw(st.floats(0.01, 5.0))
    return det.AbPair(b + gap, b)


@pytest.mark.parametrize("n, expected", [(1, 1.0), (2, 3.0), (3, 6.25), (4, 12.0)])
def test_det_G_small_n(n, expected):
    assert_allclose(det.det_G(AB, n), expected, rtol=1e-14)


def test_det_G_small_n_generic_forms():
    a, b = 1.7, 0.4
    ab = det.AbPair(a, b)
    assert_allclose(det.det_G(ab, 2), 4 * (a**2 - b**2), rtol=1e-14)
    assert_allclose(det.det_G(ab, 3), 2 * (a - b) * (2 * a + b) ** 2, rtol=1e-14)
    assert_allclose(det.det_G(ab, 4), 16 * a**2 * (a**2 - b**2), rtol=1e-14)


@pytest.mark.parametrize("a, b", [(1.0, 1.0), (0.5, 1.0), (1.0, 0.0), (1.0, -0.5)])
def test_domain_error(a, b):
    with pytest.raises(DomainError):
        det.det_G((a, b), 3)


@pytest.mark.parametrize("a, b", PAIRS)
@pytest.mark.parametrize("n", range(1, 13))
def test_det_G_against_lu(a, b, n):
    ab = det.AbPair(a, b)
    assert_allclose(det.det_G(ab, n), det.lu_det(det.build_G(ab, n)), rtol=1e-10)


def test_det_H_small_values():
    assert det.det_H(AB, 0) == 1.0
    assert_allclose(det.det_H(AB, 1), 2.0, rtol=1e-15)
    assert_allclose(det.det_H(AB, 2), 3.75, rtol=1e-14)


@pytest.mark.parametrize("a, b", PAIRS)
def test_det_H_matches_recursion(a, b):
    ab = det.AbPair(a, b)
    for n in range(0, 21):
        assert_allclose(det.det_H(ab, n), det.det_H_recursive(ab, n), rtol=1e-10)
        assert_allclose(det.det_H(ab, n), det.lu_det(det.build_H(ab, n)), rtol=1e-10)


@pytest.mark.parametrize("a, b", PAIRS)
def test_det_H_recursion_relation(a, b):
    ab = det.AbPair(a, b)
    for n in range(2, 21):
        rhs = 2 * a * det.det_H(ab, n - 1) - b**2 * det.det_H(ab, n - 2)
        assert_allclose(det.det_H(ab, n), rhs, rtol=1e-10)


@pytest.mark.parametrize("a, b", PAIRS)
def test_chain_from_ring_identity(a, b):
    ab = det.AbPair(a, b)
    for n in range(1, 11):
        lower = 0.0 if n == 1 else np.sqrt(det.det_G(ab, 2 * n - 2))
        rhs = a * np.sqrt(det.det_G(ab, 2 * n)) - 0.5 * b**2 * lower
        assert_allclose(det.det_H(ab, n) * ab.root, rhs, rtol=1e-10)


def test_det_pair():
    pair = det.det_pair(AB, 4)
    assert_allclose(pair.det_g, 12.0, rtol=1e-14)
    assert len(pair.det_h_list) == 4
    assert pair.det_h_list[0] == 1.0
    assert_allclose(pair.det_h_list[1], 2.0)
    assert all(h > 0 for h in pair.det_h_list)


def test_build_G_shapes():
    a, b = AB.a, AB.b
    assert_allclose(det.build_G(AB, 3), [[2 * a, -b, -b], [-b, 2 * a, -b], [-b, -b, 2 * a]])
    assert_allclose(det.build_G(AB, 2), [[2 * a, -2 * b], [-2 * b, 2 * a]])
    assert_allclose(det.build_G(AB, 1), [[2 * a - 2 * b]])
    g = det.build_G(AB, 7)
    assert_allclose(g, g.T)


def test_lu_det_simple():
    assert det.lu_det(np.eye(5)) == 1.0
    assert_allclose(det.lu_det(np.diag([2.0, 3.0, 4.0])), 24.0)
    assert det.lu_det(np.zeros((3, 3))) == 0.0
    assert_allclose(det.lu_det([[0.0, 1.0], [1.0, 0.0]]), -1.0)


def test_lu_det_is_oracle_for_n6():
    assert_allclose(det.lu_det(det.build_G(AB, 6)), det.det_G(AB, 6), rtol=1e-12)


def test_corner_perturbation():
    assert_allclose(det.det_G_perturbed_corner(AB, 5, AB.a), det.det_G(AB, 5), rtol=1e-15)
    assert_allclose(det.det_G_perturbed_corner(AB, 4, 1.3),
                    det.lu_det(det.build_G_corner(AB, 4, 1.3)), rtol=1e-10)
    h = 0.1
    vals = [det.det_G_perturbed_corner(AB, 6, AB.a + k * h) for k in (-1, 0, 1)]
    assert abs(vals[0] - 2 * vals[1] + vals[2]) < 1e-12


def test_two_site_perturbation():
    assert_allclose(det.det_G_perturbed_two_sites(AB, 5, AB.a, AB.a), det.det_G(AB, 5), rtol=1e-14)
    assert_allclose(det.det_G_perturbed_two_sites(AB, 5, 1.2, 0.9),
                    det.lu_det(det.build_G_two_sites(AB, 5, 1.2, 0.9)), rtol=1e-10)


@pytest.mark.parametrize("n", [3, 4, 7])
def test_two_site_bilinear_coefficient(n):
    h = 0.05
    f = lambda s, t: det.det_G_perturbed_two_sites(AB, n, AB.a + s, AB.a + t)  # noqa: E731
    mixed = f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)
    assert_allclose(mixed, 4 * det.det_H(AB, n - 2) * (2 * h) ** 2, rtol=1e-10)


def test_bond_perturbation():
    assert_allclose(det.det_G_perturbed_bond(AB, 6, AB.a, AB.b), det.det_G(AB, 6), rtol=1e-14)
    assert_allclose(det.det_G_perturbed_bond(AB, 6, 1.1, 0.6),
                    det.lu_det(det.build_G_bond(AB, 6, 1.1, 0.6)), rtol=1e-10)


@pytest.mark.parametrize("n", [3, 5, 8])
def test_bond_b1_coefficient(n):
    h = 1e-4
    f = lambda b1: det.lu_det(det.build_G_bond(AB, n, AB.a, b1))  # noqa: E731
    fd = (f(AB.b + h) - f(AB.b - h)) / (2 * h)
    analytic = -2 * AB.b * det.det_H(AB, n - 2) - 2 * AB.b ** (n - 1)
    assert_allclose(fd, analytic, rtol=1e-7)


@pytest.mark.parametrize("func, args", [
    (det.det_G_perturbed_corner, (1, 1.0)),
    (det.det_G_perturbed_two_sites, (2, 1.0, 1.0)),
    (det.det_G_perturbed_bond, (2, 1.0, 0.5)),
])
def test_perturbed_minimum_n(func, args):
    with pytest.raises(DomainError):
        func(AB, *args)


@given(ab_pairs(), st.integers(1, 12))
@settings(max_examples=150, deadline=None)
def test_det_G_positive_and_matches_lu(ab, n):
    d = det.det_G(ab, n)
    assert d > 0
    assert_allclose(d, det.lu_det(det.build_G(ab, n)), rtol=1e-9)


@given(ab_pairs(), st.integers(1, 12))
@settings(max_examples=100, deadline=None)
def test_det_G_increasing_in_a(ab, n):
    bigger = det.AbPair(ab.a * 1.01, ab.b)
    assert det.det_G(bigger, n) > det.det_G(ab, n)


def test_near_degenerate_pair_stays_accurate():
    ab = det.AbPair(1.0 + 1e-9, 1.0)
    for n in (1, 2, 5, 10):
        assert_allclose(det.det_G(ab, n), det.lu_det(det.build_G(ab, n)), rtol=1e-5)
        assert det.det_G(ab, n) > 0
