import pytest

from catalog import weighted_p2
from fan import Cone, multiplicity
from lattice import ToricError
from singularities import (
    dual_vector,
    gorenstein_report,
    is_terminal_cone,
    is_terminal_generators,
    singular_cones,
    terminal_family_cone,
)


def test_small_cones():
    assert is_terminal_generators([(1, 0), (0, 1)])
    assert not is_terminal_generators([(1, 0), (1, 2)])
    assert is_terminal_generators([(1, 0, 0), (0, 1, 0), (1, 1, 2)])


@pytest.mark.parametrize("d", range(3, 7))
def test_cone_family_is_terminal(d):
    for p in range(1, d):
        for c in range(1, d - p + 1):
            generators = terminal_family_cone(d, p, c)
            assert len(generators) == d
            assert is_terminal_generators(generators), (d, p, c)


def test_cone_family_boundary():
    assert terminal_family_cone(3, 2, 1)[-1] == (0, -1, 1)
    assert not is_terminal_generators(terminal_family_cone(3, 2, 2, strict=False))
    with pytest.raises(ToricError):
        terminal_family_cone(3, 2, 2)
    with pytest.raises(ToricError):
        terminal_family_cone(2, 1, 1)


def test_projective_plane_is_smooth(p2):
    report = gorenstein_report(p2)
    assert report.smooth and report.terminal and report.gorenstein
    assert report.singular_cones == []
    assert dual_vector(p2, Cone((0, 1))) == (1, 1)


def test_weighted_plane(p112):
    report = gorenstein_report(p112)
    assert not report.smooth
    assert not report.terminal
    assert report.gorenstein_index == 1
    assert [c.ray_indices for c in report.singular_cones] == [(1, 2)]
    assert dual_vector(p112, Cone((1, 2))) == (1, -1)


def test_gorenstein_index_three():
    fan = weighted_p2(3).fan
    report = gorenstein_report(fan)
    assert report.gorenstein_index == 3
    assert not report.gorenstein


def test_terminal_4fold(fano4):
    report = gorenstein_report(fano4)
    assert report.terminal
    # cone(x1,x5) and cone(x4,x6) are smooth; the singular cones lie above them
    assert [c.ray_indices for c in report.singular_cones] == [(0, 2, 4), (1, 3, 5), (0, 3, 4, 5)]
    assert multiplicity(fano4, Cone((0, 4))) == multiplicity(fano4, Cone((3, 5))) == 1
    assert multiplicity(fano4, Cone((0, 2, 4))) == 2
    assert multiplicity(fano4, Cone((0, 3, 4, 5))) == 3


def test_dfold_singular_along_one_curve(dfold4):
    report = gorenstein_report(dfold4)
    assert report.terminal
    assert [c.ray_indices for c in report.singular_cones] == [(0, 1, 2)]
    assert [c.multiplicity for c in report.cones if c.multiplicity > 1] == [2, 2]


def test_gorenstein_3fold(fano3):
    report = gorenstein_report(fano3)
    assert not report.terminal
    assert report.gorenstein_index == 1
    assert [c.ray_indices for c in singular_cones(fano3)] == [(2, 3)]
    assert not all(is_terminal_cone(fano3, sigma) for sigma in fano3.max_cones)


def test_threads_give_the_same_report(monkeypatch, fano4):
    single = gorenstein_report(fano4)
    monkeypatch.setenv("GAMMA2_THREADS", "4")
    threaded = gorenstein_report(fano4)
    assert threaded.cones == single.cones
    assert threaded.singular_cones == single.singular_cones
