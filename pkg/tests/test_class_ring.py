from fractions import Fraction

import pytest

from catalog import hirzebruch, p2_quotient, terminal_fano_dfold
from class_ring import ClassRing, monomial_basis, poly_add, poly_mul, poly_product
from fan import Cone, Fan, FanError, multiplicity
from lattice import UnsupportedError


def test_polynomial_helpers():
    p, q = (Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))
    assert poly_mul(p, q) == (0, 1, 0)
    assert poly_product([p, p, q]) == (0, 1, 0, 0)
    assert poly_add((1, 2), (3, 4)) == (4, 6)
    assert monomial_basis(1) == [(1, 0), (0, 1)]
    with pytest.raises(ValueError):
        poly_add((1,), (1, 2))


def test_projective_plane(p2):
    ring = ClassRing(p2)
    assert ring.intersection_number([0, 0]) == 1
    assert ring.intersection_number([0, 1]) == 1
    assert ring.gamma2_dot_cone(Cone(())) == 3


def test_weighted_projective_plane(p112):
    ring = ClassRing(p112)
    assert [ring.intersection_number([v, v]) for v in range(3)] == [2, Fraction(1, 2), Fraction(1, 2)]
    assert ring.gamma2_dot_cone(Cone(())) == 3


def test_quotient_of_projective_plane():
    ring = ClassRing(p2_quotient().fan)
    assert ring.intersection_number([0, 0]) == Fraction(1, 3)
    assert ring.gamma2_dot_cone(Cone(())) == 1


def test_hirzebruch_intersection_numbers():
    for a in range(4):
        ring = ClassRing(hirzebruch(a).fan)
        assert [ring.intersection_number([v, v]) for v in range(4)] == [0, -a, 0, a]
        assert ring.intersection_number([0, 1]) == 1


def test_projective_3space(p3):
    ring = ClassRing(p3)
    assert ring.intersection_number([0, 1, 2]) == 1
    assert ring.intersection_number([0, 0, 0]) == 1
    for v in range(4):
        assert ring.gamma2_dot_cone(Cone((v,))) == 4


def test_maximal_cones_have_degree_one_over_multiplicity(fano4, fano3, dfold4):
    for fan in (fano4, fano3, dfold4, terminal_fano_dfold(5).fan):
        ring = ClassRing(fan)
        for sigma in fan.max_cones:
            assert ring.degree(ring.monomial(sigma)) == Fraction(1, multiplicity(fan, sigma))


def test_disjoint_divisors_do_not_meet(fano4):
    ring = ClassRing(fano4)
    # x1, x2, x5 form the x-side primitive collection
    assert ring.intersection_number([0, 1, 4, 2]) == 0


def test_gamma2_dot_cone_rejects_bad_cones(fano3, dfold4):
    with pytest.raises(FanError, match="has dimension 2, expected 1"):
        ClassRing(fano3).gamma2_dot_cone(Cone((0, 1)))
    with pytest.raises(FanError, match="not a cone"):
        ClassRing(dfold4).gamma2_dot_cone(Cone((4, 5)))


def test_picard_number_three_unsupported():
    rays = [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]]
    cones = [(a, b, c) for a in (0, 1) for b in (2, 3) for c in (4, 5)]
    with pytest.raises(UnsupportedError):
        ClassRing(Fan.from_lists(3, rays, cones))


def test_degree_rejects_wrong_degree(p3):
    ring = ClassRing(p3)
    with pytest.raises(ValueError):
        ring.degree(ring.monomial([0, 1]))
