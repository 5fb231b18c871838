# src/walls.py - Walls, wall relations, Fano test and extremal walls for Picard number two

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from fan import Cone, Fan, FanError, facet_map
from lattice import (
    DegenerateWallError,
    InternalConsistencyError,
    UnsupportedError,
    kernel_basis,
    solve_dependency,
    solve_linear,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Wall:
    """A (d-1)-cone shared by two maximal cones; opposite_rays[k] completes cone k of the pair"""
    tau: Cone
    left: int
    right: int
    opposite_rays: Tuple[int, int]


@dataclass(frozen=True)
class WallRelation:
    """Primitive integral relation among a wall's rays, positive on both opposite rays"""
    wall: Wall
    coeffs: Tuple[int, ...]
    normalization: str = "primitive-integral"

    def __getitem__(self, ray: int) -> int:
        return self.coeffs[ray]

    @property
    def total(self) -> int:
        return sum(self.coeffs)

    def support(self) -> Tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.coeffs) if c != 0)

    def positive_support(self) -> Tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.coeffs) if c > 0)

    def negative_support(self) -> Tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.coeffs) if c < 0)

    def ray_set(self) -> Tuple[int, ...]:
        return tuple(sorted(set(self.wall.tau) | set(self.wall.opposite_rays)))

    def format(self, names: Optional[Sequence[str]] = None) -> str:
        names = names or [f"x{i + 1}" for i in range(len(self.coeffs))]
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            magnitude = "" if abs(c) == 1 else str(abs(c))
            sign = "-" if c < 0 else ("+" if terms else "")
            terms.append(f"{sign}{magnitude}{names[i]}")
        return "".join(terms) + "=0"


@dataclass
class FanoReport:
    is_fano: bool
    witnesses: List[Tuple[Wall, int]]

    @property
    def min_wall_sum(self) -> Optional[int]:
        return min((s for _, s in self.witnesses), default=None)


@dataclass(frozen=True)
class ExtremalPair:
    """The two boundary rays of the Mori cone of a Picard-number-two fan"""
    x_relation: WallRelation
    y_relation: WallRelation
    x_side: Tuple[int, ...]
    y_side: Tuple[int, ...]


# ---------- Walls ----------

@lru_cache(maxsize=None)
def _walls(fan: Fan) -> Tuple[Wall, ...]:
    result = []
    for facet, owners in sorted(facet_map(fan).items(), key=lambda item: item[0].ray_indices):
        if len(owners) != 2:
            raise FanError(f"wall condition fails at facet {list(facet.ray_indices)}: "
                           f"{len(owners)} maximal cone(s), expected 2")
        left, right = sorted(owners)
        (y_left,) = [i for i in fan.max_cones[left] if i not in facet]
        (y_right,) = [i for i in fan.max_cones[right] if i not in facet]
        result.append(Wall(tau=facet, left=left, right=right, opposite_rays=(y_left, y_right)))
    return tuple(result)


def walls(fan: Fan) -> List[Wall]:
    """Every wall of the fan, sorted by the ray indices of its (d-1)-cone"""
    return list(_walls(fan))


def find_wall(fan: Fan, tau: Cone) -> Wall:
    tau = Cone(tuple(tau))
    for wall in _walls(fan):
        if wall.tau == tau:
            return wall
    raise FanError(f"{tau.label()} is not a wall of the fan")


@lru_cache(maxsize=None)
def wall_relation(fan: Fan, wall: Wall) -> WallRelation:
    """Unique relation on the d+1 rays of the wall, normalized positive on the opposite rays"""
    indices = sorted(set(wall.tau) | set(wall.opposite_rays))
    vec = solve_dependency([fan.rays[i] for i in indices])
    coeffs = [0] * fan.n_rays
    for i, c in zip(indices, vec):
        coeffs[i] = c
    y1, y2 = wall.opposite_rays
    if coeffs[y1] < 0:
        coeffs = [-c for c in coeffs]
    if coeffs[y1] <= 0 or coeffs[y2] <= 0:
        raise DegenerateWallError(
            f"opposite rays {y1} and {y2} of wall {list(wall.tau.ray_indices)} are not separated")
    return WallRelation(wall=wall, coeffs=tuple(coeffs))


def all_wall_relations(fan: Fan) -> List[WallRelation]:
    return [wall_relation(fan, w) for w in _walls(fan)]


def curve_class(relation: WallRelation) -> Tuple[int, ...]:
    """Numerical class of the wall curve: its intersection numbers with D_1..D_n"""
    return relation.coeffs


def annihilates_linear_relations(fan: Fan, vector: Sequence) -> bool:
    """True when sum_v <m, v> vector[v] = 0 for every m, i.e. vector is a relation among the rays"""
    return all(sum(fan.rays[v][k] * vector[v] for v in range(fan.n_rays)) == 0 for k in range(fan.dim))


def is_fano(fan: Fan) -> FanoReport:
    """Fano exactly when -K meets every wall curve positively"""
    witnesses = [(r.wall, sum(curve_class(r))) for r in all_wall_relations(fan)]
    return FanoReport(is_fano=all(s > 0 for _, s in witnesses), witnesses=witnesses)


# ---------- Picard number two ----------

def _cross(p, q) -> Fraction:
    return p[0] * q[1] - p[1] * q[0]


def _relation_plane(fan: Fan) -> Tuple[int, int]:
    """Two coordinates on which the relation space projects isomorphically"""
    matrix = [[fan.rays[j][i] for j in range(fan.n_rays)] for i in range(fan.dim)]
    k1, k2 = kernel_basis(matrix)
    for i in range(fan.n_rays):
        for j in range(i + 1, fan.n_rays):
            if k1[i] * k2[j] - k1[j] * k2[i] != 0:
                return i, j
    raise InternalConsistencyError("relation space is not two-dimensional")


def _boundary(relations: List[WallRelation], points: Dict[WallRelation, Tuple[int, int]], sign: int):
    candidates = [r for r in relations
                  if all(sign * _cross(points[r], points[s]) >= 0 for s in relations)]
    if not candidates:
        raise InternalConsistencyError("wall classes do not span a strictly convex cone")
    return min(candidates, key=lambda r: r.wall.tau.ray_indices)


@lru_cache(maxsize=None)
def extremal_walls_rho2(fan: Fan) -> ExtremalPair:
    """Extremal wall relations R_x, R_y; the x-side is the positive support holding ray 0"""
    if fan.picard_number != 2:
        raise UnsupportedError(f"extremal walls need Picard number 2, got {fan.picard_number}")
    relations = all_wall_relations(fan)
    i, j = _relation_plane(fan)
    points = {r: (r[i], r[j]) for r in relations}

    for r in relations:
        for s in relations:
            p, q = points[r], points[s]
            if _cross(p, q) == 0 and p[0] * q[0] + p[1] * q[1] < 0:
                raise InternalConsistencyError("opposite wall classes: the Mori cone is not strictly convex")

    first = _boundary(relations, points, 1)
    second = _boundary(relations, points, -1)
    if _cross(points[first], points[second]) == 0:
        raise InternalConsistencyError("all wall classes lie on one ray")

    side_a, side_b = set(first.positive_support()), set(second.positive_support())
    if side_a & side_b or (side_a | side_b) != set(range(fan.n_rays)):
        raise InternalConsistencyError("positive supports of the extremal relations do not partition the rays")
    if 0 not in side_a:
        first, second = second, first
        side_a, side_b = side_b, side_a
    if len(side_a) < 2 or len(side_b) < 2:
        raise InternalConsistencyError("an extremal side has fewer than two rays")

    logger.debug("extremal relations: %s | %s", first.format(), second.format())
    return ExtremalPair(x_relation=first, y_relation=second,
                        x_side=tuple(sorted(side_a)), y_side=tuple(sorted(side_b)))


def class_coordinates(pair: ExtremalPair, vector: Sequence) -> Tuple[Fraction, Fraction]:
    """(alpha, beta) with vector = alpha R_x + beta R_y"""
    matrix = [[pair.x_relation[v], pair.y_relation[v]] for v in range(len(vector))]
    alpha, beta = solve_linear(matrix, list(vector))
    return alpha, beta
