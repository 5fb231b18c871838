# src/catalog.py - Reference fans: the three worked examples and standard surfaces and spaces

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Dict, List, Sequence, Tuple

from fan import Fan, FanError, multiplicity, require_valid
from lattice import ToricError
from surfaces import blowup_surface, crepant_subdivide, height_one_points
from walls import extremal_walls_rho2

logger = logging.getLogger(__name__)

RECONSTRUCTED = ("maximal cones reconstructed as all cones omitting one ray from each side of the "
                 "extremal partition; accepted after validation and reproduction of both extremal relations")


@dataclass
class CatalogEntry:
    name: str
    fan: Fan
    parameters: Dict[str, int] = field(default_factory=dict)
    expected: Dict[str, object] = field(default_factory=dict)
    notes: str = ""


def _unit(d: int, i: int) -> List[int]:
    return [int(i == j) for j in range(d)]


def two_sided_cones(x_side: Sequence[int], y_side: Sequence[int]) -> List[Tuple[int, ...]]:
    """Maximal cones of a Picard-number-two fan: omit one ray from each side"""
    everything = sorted(set(x_side) | set(y_side))
    return [tuple(i for i in everything if i not in (x, y)) for x, y in product(x_side, y_side)]


def _checked(entry: CatalogEntry, relations: Sequence[Sequence[int]] = ()) -> CatalogEntry:
    """Refuse to ship a fan that fails validation or does not reproduce its extremal relations"""
    require_valid(entry.fan)
    if relations:
        pair = extremal_walls_rho2(entry.fan)
        found = {pair.x_relation.coeffs, pair.y_relation.coeffs}
        if found != {tuple(r) for r in relations}:
            raise FanError(f"{entry.name}: extremal relations {sorted(found)} differ from {sorted(relations)}")
    return entry


# ---------- Worked examples ----------

def terminal_fano_4fold() -> CatalogEntry:
    """Terminal Fano 4-fold with Picard number two that is gamma_2-positive"""
    rays = [_unit(4, 0), _unit(4, 1), _unit(4, 2), _unit(4, 3), [-1, -2, -1, 0], [0, -1, -2, -1]]
    fan = Fan.from_lists(4, rays, two_sided_cones([0, 1, 4], [2, 3, 5]))
    relations = [(2, 3, 0, -1, 2, -1), (-1, 0, 3, 2, -1, 2)]
    entry = CatalogEntry(
        name="terminal-fano-4fold", fan=fan, notes=RECONSTRUCTED,
        expected={"rho": 2, "terminal": True, "fano": True, "verdict": "positive", "walls": 18,
                  "s2": (4, 5), "s2_value": Fraction(8), "extremal_relations": relations,
                  "singular_cones": [(0, 2, 4), (1, 3, 5), (0, 3, 4, 5)],
                  "centrally_symmetric_pair": False})
    return _checked(entry, relations)


def terminal_fano_dfold(d: int = 4) -> CatalogEntry:
    """Family of terminal Fano d-folds, Picard number two, singular along one curve"""
    if d < 4:
        raise ToricError(f"the family needs d >= 4, got d={d}")
    rays = [_unit(d, i) for i in range(d - 2)]
    rays.append([-1] * (d - 2) + [-(d - 2), 0])
    rays.append(_unit(d, d - 2))
    rays.append([0] * (d - 2) + [-1, -1])
    rays.append(_unit(d, d - 1))
    x_side, y_side = list(range(d)), [d, d + 1]
    fan = Fan.from_lists(d, rays, two_sided_cones(x_side, y_side))
    relations = [tuple([1] * (d - 1) + [d - 2, 0, 0]),
                 tuple([-1] * (d - 1) + [0, d - 2, d - 2])]
    k = d - 2
    entry = CatalogEntry(
        name="terminal-fano-dfold", fan=fan, parameters={"d": d}, notes=RECONSTRUCTED,
        expected={"rho": 2, "terminal": True, "fano": True, "verdict": "positive",
                  "s2": tuple(range(1, d - 1)), "s2_value": Fraction(k ** 3 - k * (d - 1)),
                  "s3": tuple(range(2, d - 1)) + (d,), "s1_absent": True,
                  "extremal_relations": relations, "singular_cones": [tuple(range(d - 1))],
                  "centrally_symmetric_pair": False})
    return _checked(entry, relations)


def gorenstein_fano_3fold() -> CatalogEntry:
    """Gorenstein Fano 3-fold with Picard number two, singular along one curve"""
    rays = [_unit(3, 0), _unit(3, 1), _unit(3, 2), [0, -2, -1], [-1, -1, 0]]
    fan = Fan.from_lists(3, rays, two_sided_cones([0, 4], [1, 2, 3]))
    relations = [(2, 0, -1, -1, 2), (0, 2, 1, 1, 0)]
    entry = CatalogEntry(
        name="gorenstein-fano-3fold", fan=fan, notes=RECONSTRUCTED,
        expected={"rho": 2, "gorenstein_index": 1, "fano": True, "terminal": False, "verdict": "positive",
                  "s2": (3,), "s2_value": Fraction(2), "s3_absent": True,
                  "extremal_relations": relations, "singular_cones": [(2, 3)]})
    return _checked(entry, relations)


# ---------- Standard fans ----------

def projective_space(d: int = 2) -> CatalogEntry:
    if d < 1:
        raise ToricError(f"projective space needs d >= 1, got d={d}")
    rays = [_unit(d, i) for i in range(d)] + [[-1] * d]
    cones = [tuple(j for j in range(d + 1) if j != i) for i in range(d + 1)]
    expected = {"rho": 1, "terminal": True, "gorenstein_index": 1, "fano": True, "verdict": "positive"}
    if d == 2:
        expected["gamma2"] = Fraction(3)
    return _checked(CatalogEntry(name="projective-space", fan=Fan.from_lists(d, rays, cones),
                                 parameters={"d": d}, expected=expected))


def hirzebruch(a: int = 1) -> CatalogEntry:
    if a < 0:
        raise ToricError(f"Hirzebruch surfaces need a >= 0, got a={a}")
    fan = Fan.from_lists(2, [[1, 0], [0, 1], [-1, a], [0, -1]], [(0, 1), (1, 2), (2, 3), (3, 0)])
    return _checked(CatalogEntry(
        name="hirzebruch", fan=fan, parameters={"a": a},
        expected={"rho": 2, "gamma2": Fraction(0), "fano": a <= 1, "verdict": "nef-not-positive",
                  "self_intersections": {0: 0, 1: -a, 2: 0, 3: a}}))


def product_p1_p1() -> CatalogEntry:
    fan = Fan.from_lists(2, [[1, 0], [0, 1], [-1, 0], [0, -1]], [(0, 1), (1, 2), (2, 3), (3, 0)])
    return _checked(CatalogEntry(name="p1xp1", fan=fan,
                                 expected={"rho": 2, "gamma2": Fraction(0), "fano": True, "walls": 4}))


def weighted_p2(k: int = 2) -> CatalogEntry:
    """P(1,1,k) with rays (0,1), (1,0), (-1,-k)"""
    if k < 1:
        raise ToricError(f"weight must be positive, got k={k}")
    fan = Fan.from_lists(2, [[0, 1], [1, 0], [-1, -k]], [(0, 1), (1, 2), (0, 2)])
    expected = {"rho": 1}
    if k == 2:
        expected.update({"gamma2": Fraction(3), "gorenstein_index": 1,
                         "self_intersections": {0: Fraction(2), 1: Fraction(1, 2), 2: Fraction(1, 2)}})
    return _checked(CatalogEntry(name="weighted-p2", fan=fan, parameters={"k": k}, expected=expected))


def blowup_p2(k: int = 1) -> CatalogEntry:
    """P^2 blown up at k <= 3 torus-fixed points"""
    if not 0 <= k <= 3:
        raise ToricError(f"at most three torus-fixed points can be blown up, got k={k}")
    fan = projective_space(2).fan
    corners = [((1, 0), (0, 1)), ((0, 1), (-1, -1)), ((-1, -1), (1, 0))]
    for u, w in corners[:k]:
        (index,) = [i for i, c in enumerate(fan.max_cones) if {fan.rays[j] for j in c} == {u, w}]
        fan = blowup_surface(fan, index)
    return _checked(CatalogEntry(name="blowup-p2", fan=fan, parameters={"k": k},
                                 expected={"rho": 1 + k, "gamma2": Fraction(3 - 3 * k)}))


def p2_quotient() -> CatalogEntry:
    """P^2 / (Z/3), a Gorenstein surface with Picard number one"""
    fan = Fan.from_lists(2, [[2, -1], [-1, 2], [-1, -1]], [(0, 1), (1, 2), (0, 2)])
    return _checked(CatalogEntry(name="p2-quotient", fan=fan,
                                 expected={"rho": 1, "gamma2": Fraction(1), "gorenstein_index": 1}))


CATALOG: Dict[str, Tuple[Callable[..., CatalogEntry], Dict[str, int]]] = {
    "terminal-fano-4fold": (terminal_fano_4fold, {}),
    "terminal-fano-dfold": (terminal_fano_dfold, {"d": 4}),
    "gorenstein-fano-3fold": (gorenstein_fano_3fold, {}),
    "projective-space": (projective_space, {"d": 2}),
    "hirzebruch": (hirzebruch, {"a": 1}),
    "p1xp1": (product_p1_p1, {}),
    "weighted-p2": (weighted_p2, {"k": 2}),
    "blowup-p2": (blowup_p2, {"k": 1}),
    "p2-quotient": (p2_quotient, {}),
}


def list_entries() -> List[Tuple[str, Dict[str, int]]]:
    return [(name, dict(defaults)) for name, (_, defaults) in CATALOG.items()]


def get_entry(name: str, **params: int) -> CatalogEntry:
    if name not in CATALOG:
        raise ToricError(f"unknown catalog entry '{name}'; available: {sorted(CATALOG)}")
    builder, defaults = CATALOG[name]
    unknown = set(params) - set(defaults)
    if unknown:
        raise ToricError(f"{name} takes parameters {sorted(defaults) or 'none'}, got {sorted(unknown)}")
    return builder(**{**defaults, **params})


def has_centrally_symmetric_pair(fan: Fan) -> bool:
    rays = set(fan.rays)
    return any(tuple(-x for x in r) in rays for r in fan.rays)


def random_gorenstein_surfaces(seed: int, count: int, max_steps: int = 3) -> List[Fan]:
    """Gorenstein surfaces from the Picard-number-one seeds and smooth surfaces, modified by
    random crepant insertions and blow-ups of smooth torus-fixed points"""
    rng = random.Random(seed)
    seeds = [projective_space(2).fan, weighted_p2(2).fan, p2_quotient().fan,
             hirzebruch(0).fan, hirzebruch(2).fan, hirzebruch(3).fan, blowup_p2(1).fan]
    family = []
    for i in range(count):
        fan = seeds[i % len(seeds)]
        for _ in range(rng.randint(0, max_steps)):
            moves = []
            for k, cone in enumerate(fan.max_cones):
                if multiplicity(fan, cone) == 1:
                    moves.append(("blowup", k, None))
                for point in height_one_points(fan, cone):
                    moves.append(("crepant", k, point))
            kind, k, point = rng.choice(moves)
            fan = blowup_surface(fan, k) if kind == "blowup" else crepant_subdivide(fan, k, point)
        family.append(fan)
    logger.debug("generated %d Gorenstein surfaces from seed %d", len(family), seed)
    return family
