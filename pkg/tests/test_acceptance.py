"""End-to-end checks on the worked examples, run through the same fixtures as `verify-examples`"""

import pytest

from catalog import terminal_fano_4fold
from class_ring import ClassRing
from fan import Cone, validate
from gamma2 import classify_gamma2, gamma2_dot_quad, ne2_generators
from singularities import gorenstein_report, is_terminal_generators, terminal_family_cone
from verification import run_example_checks
from walls import extremal_walls_rho2, is_fano


@pytest.fixture(scope="module")
def fixture_table():
    return run_example_checks()


def test_every_fixture_passes(fixture_table):
    failed = fixture_table[~fixture_table["passed"]]
    assert failed.empty, failed.to_string(index=False)
    assert len(fixture_table) >= 20


def test_terminal_4fold_end_to_end():
    entry = terminal_fano_4fold()
    fan = entry.fan
    assert validate(fan, deep=True).valid
    pair = extremal_walls_rho2(fan)
    assert {pair.x_relation.coeffs, pair.y_relation.coeffs} == {tuple(r) for r in entry.expected["extremal_relations"]}
    assert gorenstein_report(fan).terminal
    assert is_fano(fan).is_fano
    assert fan.picard_number == 2
    assert gamma2_dot_quad(fan, Cone((4, 5))) == 8
    assert classify_gamma2(fan).verdict == "positive"


def test_boundary_of_the_terminal_family_has_a_witness():
    witnesses = [(d, p) for d in range(3, 7) for p in range(1, d)
                 if not is_terminal_generators(terminal_family_cone(d, p, d - p + 1, strict=False))]
    assert (3, 2) in witnesses


def test_s1_and_s3_are_positive_on_catalog_fans(rho2_fans):
    for fan in rho2_fans:
        if fan.dim < 3:
            continue
        ring = ClassRing(fan)
        for name, cone in ne2_generators(fan).present():
            assert ring.gamma2_dot_cone(cone) > 0, (name, cone)
