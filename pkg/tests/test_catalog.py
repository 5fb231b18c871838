import pytest

from catalog import (
    get_entry,
    has_centrally_symmetric_pair,
    list_entries,
    random_gorenstein_surfaces,
    terminal_fano_dfold,
    two_sided_cones,
)
from fan import validate
from gamma2 import classify_gamma2, gamma2_dot_quad, ne2_generators
from lattice import ToricError
from singularities import gorenstein_report
from surfaces import gamma2_surface, surface_self_intersections
from walls import extremal_walls_rho2, is_fano, walls


def observed(fan, key):
    """Recompute one expected fact of a catalog entry"""
    if key == "rho":
        return fan.picard_number
    if key == "terminal":
        return gorenstein_report(fan).terminal
    if key == "gorenstein_index":
        return gorenstein_report(fan).gorenstein_index
    if key == "fano":
        return is_fano(fan).is_fano
    if key == "verdict":
        return classify_gamma2(fan).verdict
    if key == "walls":
        return len(walls(fan))
    if key == "gamma2":
        return gamma2_surface(fan)
    if key == "self_intersections":
        return surface_self_intersections(fan)
    if key == "s2":
        return ne2_generators(fan).s2.ray_indices
    if key == "s2_value":
        return gamma2_dot_quad(fan, ne2_generators(fan).s2)
    if key == "s3":
        return ne2_generators(fan).s3.ray_indices
    if key == "s1_absent":
        return ne2_generators(fan).s1_absent
    if key == "s3_absent":
        return ne2_generators(fan).s3_absent
    if key == "extremal_relations":
        pair = extremal_walls_rho2(fan)
        return sorted([pair.x_relation.coeffs, pair.y_relation.coeffs])
    if key == "singular_cones":
        return [c.ray_indices for c in gorenstein_report(fan).singular_cones]
    if key == "centrally_symmetric_pair":
        return has_centrally_symmetric_pair(fan)
    raise KeyError(key)


def normalized(key, value):
    if key == "extremal_relations":
        return sorted(tuple(r) for r in value)
    return value


@pytest.mark.parametrize("name, params", list_entries())
def test_entry_matches_its_expected_facts(name, params):
    entry = get_entry(name, **params)
    assert entry.name == name
    assert entry.parameters == params
    assert validate(entry.fan).valid
    assert entry.expected
    for key, value in entry.expected.items():
        assert observed(entry.fan, key) == normalized(key, value), key


@pytest.mark.parametrize("d", range(5, 9))
def test_dfold_family_expected_facts(d):
    entry = terminal_fano_dfold(d)
    for key in ("rho", "fano", "s2", "s2_value", "s3", "s1_absent", "extremal_relations",
                "centrally_symmetric_pair"):
        assert observed(entry.fan, key) == normalized(key, entry.expected[key]), key


def test_parameters():
    assert get_entry("projective-space", d=3).fan.n_rays == 4
    assert get_entry("hirzebruch", a=3).parameters == {"a": 3}
    with pytest.raises(ToricError, match="unknown catalog entry"):
        get_entry("no-such-fan")
    with pytest.raises(ToricError, match="takes parameters"):
        get_entry("p1xp1", d=2)
    with pytest.raises(ToricError):
        get_entry("terminal-fano-dfold", d=3)
    with pytest.raises(ToricError):
        get_entry("blowup-p2", k=4)
    with pytest.raises(ToricError):
        get_entry("hirzebruch", a=-1)


def test_two_sided_cones():
    assert two_sided_cones([0, 1], [2, 3]) == [(1, 3), (1, 2), (0, 3), (0, 2)]


def test_centrally_symmetric_pairs(fano4):
    assert not has_centrally_symmetric_pair(fano4)
    assert has_centrally_symmetric_pair(get_entry("p1xp1").fan)


def test_random_gorenstein_surfaces_are_reproducible():
    first = random_gorenstein_surfaces(seed=5, count=20)
    second = random_gorenstein_surfaces(seed=5, count=20)
    assert first == second
    for fan in first:
        assert validate(fan).valid
        assert gorenstein_report(fan).gorenstein
