# src/fan.py - Fans, cones, validation and 2-dimensional star quotients

import logging
import random
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key, lru_cache
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from lattice import (
    LatticeError,
    LatticePoint,
    ToricError,
    cone_multiplicity,
    determinant,
    inequalities_feasible,
    inverse_matrix,
    is_primitive,
    quotient_images,
)

logger = logging.getLogger(__name__)

# Pairwise overlap check runs by default up to this dimension.
DEEP_MAX_DIM = 5
# Seeded random directions for the point-location check.
LOCATION_SAMPLES = 24
LOCATION_SEED = 20201


class FanError(ToricError):
    """The fan is not a complete simplicial fan, or a cone is not in it"""


@dataclass(frozen=True)
class Cone:
    """A cone of a fan, named by the sorted set of its ray indices"""
    ray_indices: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "ray_indices", tuple(sorted(set(int(i) for i in self.ray_indices))))

    @property
    def dim(self) -> int:
        return len(self.ray_indices)

    def __iter__(self):
        return iter(self.ray_indices)

    def __contains__(self, index) -> bool:
        return index in self.ray_indices

    def __len__(self) -> int:
        return len(self.ray_indices)

    def issubset(self, other: "Cone") -> bool:
        return set(self.ray_indices) <= set(other.ray_indices)

    def union(self, *indices: int) -> "Cone":
        return Cone(self.ray_indices + tuple(indices))

    def minus(self, *indices: int) -> "Cone":
        return Cone(tuple(i for i in self.ray_indices if i not in indices))

    def label(self, names: Optional[Sequence[str]] = None) -> str:
        names = names or [f"x{i + 1}" for i in range(max(self.ray_indices, default=-1) + 1)]
        return "cone(" + ",".join(names[i] for i in self.ray_indices) + ")"


@dataclass(frozen=True)
class Fan:
    """Complete simplicial fan: primitive rays in Z^dim and maximal cones as ray-index sets"""
    dim: int
    rays: Tuple[LatticePoint, ...]
    max_cones: Tuple[Cone, ...]

    @classmethod
    def from_lists(cls, dim: int, rays: Iterable[Sequence[int]], max_cones: Iterable[Iterable[int]]) -> "Fan":
        return cls(
            dim=int(dim),
            rays=tuple(tuple(int(x) for x in r) for r in rays),
            max_cones=tuple(Cone(tuple(c)) for c in max_cones),
        )

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    @property
    def picard_number(self) -> int:
        return self.n_rays - self.dim

    def generators(self, cone: Cone) -> List[LatticePoint]:
        return [self.rays[i] for i in cone]

    def cones_containing(self, cone: Cone) -> List[int]:
        """Indices of the maximal cones having `cone` as a face"""
        return [k for k, sigma in enumerate(self.max_cones) if cone.issubset(sigma)]

    def is_cone(self, cone: Cone) -> bool:
        return bool(self.cones_containing(cone))


@dataclass
class ValidationFailure:
    kind: str
    detail: str
    cones: List[Tuple[int, ...]] = field(default_factory=list)


@dataclass
class ValidationReport:
    dim: int
    n_rays: int
    n_max_cones: int
    picard_number: int
    deep: bool
    failures: List[ValidationFailure] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.failures

    def kinds(self) -> List[str]:
        return [f.kind for f in self.failures]

    def count(self, kind: str) -> int:
        return sum(1 for f in self.failures if f.kind == kind)


# ---------- Validation ----------

def _structural_failures(fan: Fan) -> List[ValidationFailure]:
    failures: List[ValidationFailure] = []
    d = fan.dim
    if not isinstance(d, int) or d < 1:
        return [ValidationFailure("bad dimension", f"dimension must be a positive integer, got {d!r}")]

    seen: Dict[LatticePoint, int] = {}
    for i, ray in enumerate(fan.rays):
        if len(ray) != d:
            failures.append(ValidationFailure("bad ray", f"ray {i} has {len(ray)} coordinates, expected {d}"))
            continue
        if all(x == 0 for x in ray):
            failures.append(ValidationFailure("bad ray", f"ray {i} is the zero vector"))
            continue
        if not is_primitive(ray):
            failures.append(ValidationFailure("non-primitive ray", f"ray {i} = {list(ray)} is not primitive"))
        if ray in seen:
            failures.append(ValidationFailure("duplicate ray", f"rays {seen[ray]} and {i} coincide"))
        seen.setdefault(ray, i)
    if failures:
        return failures

    used = set()
    seen_cones = set()
    for k, cone in enumerate(fan.max_cones):
        if cone.dim != d or any(i < 0 or i >= fan.n_rays for i in cone):
            failures.append(ValidationFailure(
                "bad cone", f"maximal cone {k} must list {d} distinct ray indices in range", [cone.ray_indices]))
            continue
        if cone in seen_cones:
            failures.append(ValidationFailure("duplicate cone", f"maximal cone {k} is listed twice",
                                              [cone.ray_indices]))
        seen_cones.add(cone)
        used.update(cone)
        if determinant(fan.generators(cone)) == 0:
            failures.append(ValidationFailure(
                "non-simplicial cone", f"maximal cone {k} has linearly dependent rays", [cone.ray_indices]))
    for i in range(fan.n_rays):
        if i not in used:
            failures.append(ValidationFailure("unused ray", f"ray {i} lies in no maximal cone"))
    return failures


def facet_map(fan: Fan) -> Dict[Cone, List[int]]:
    """Every (d-1)-face of a maximal cone mapped to the maximal cones containing it"""
    facets: Dict[Cone, List[int]] = defaultdict(list)
    for k, cone in enumerate(fan.max_cones):
        for i in cone:
            facets[cone.minus(i)].append(k)
    return facets


def _wall_failures(fan: Fan) -> List[ValidationFailure]:
    failures = []
    for facet, owners in sorted(facet_map(fan).items(), key=lambda item: item[0].ray_indices):
        if len(owners) != 2:
            failures.append(ValidationFailure(
                "wall condition",
                f"facet {list(facet.ray_indices)} lies in {len(owners)} maximal cone(s), expected 2",
                [fan.max_cones[k].ray_indices for k in owners]))
            continue
        # The two opposite rays must lie strictly on opposite sides of the facet hyperplane.
        facet_rays = fan.generators(facet)
        sides = []
        for k in owners:
            (y,) = [i for i in fan.max_cones[k] if i not in facet]
            sides.append(determinant(facet_rays + [fan.rays[y]]))
        if sides[0] * sides[1] >= 0:
            failures.append(ValidationFailure(
                "folded wall",
                f"maximal cones on facet {list(facet.ray_indices)} lie on the same side",
                [fan.max_cones[k].ray_indices for k in owners]))
    return failures


def _random_direction(rng: random.Random, dim: int) -> Tuple[Fraction, ...]:
    return tuple(Fraction(rng.randint(-10 ** 6, 10 ** 6), rng.randint(1, 997)) for _ in range(dim))


def _location_failures(fan: Fan, samples: int, seed: int) -> List[ValidationFailure]:
    """Random directions must fall in the interior of exactly one maximal cone"""
    rng = random.Random(seed)
    inverses = [inverse_matrix([[fan.rays[i][r] for i in cone] for r in range(fan.dim)])
                for cone in fan.max_cones]
    failures = []
    done = 0
    attempts = 0
    while done < samples and attempts < samples * 20:
        attempts += 1
        p = _random_direction(rng, fan.dim)
        if all(x == 0 for x in p):
            continue
        hits = 0
        on_boundary = False
        for inv in inverses:
            coords = [sum((inv[r, c] * p[c] for c in range(fan.dim)), Fraction(0)) for r in range(fan.dim)]
            if all(x >= 0 for x in coords):
                if any(x == 0 for x in coords):
                    on_boundary = True
                    break
                hits += 1
        if on_boundary:
            continue
        done += 1
        if hits != 1:
            failures.append(ValidationFailure(
                "point location",
                f"direction {[str(x) for x in p]} lies in {hits} maximal cone(s), expected 1"))
    return failures


def _overlap_failures(fan: Fan) -> List[ValidationFailure]:
    """Pairwise check that two maximal cones meet exactly along their common face"""
    failures = []
    inverses = [inverse_matrix([[fan.rays[i][r] for i in cone] for r in range(fan.dim)])
                for cone in fan.max_cones]
    for k1, k2 in combinations(range(len(fan.max_cones)), 2):
        sigma1, sigma2 = fan.max_cones[k1], fan.max_cones[k2]
        common = set(sigma1) & set(sigma2)
        rows_outside = [r for r, i in enumerate(sigma1) if i not in common]
        others = [i for i in sigma2 if i not in common]
        if not others:
            continue
        # alpha[r][j]: coordinate r of ray others[j] in the basis of sigma1.
        alpha = [[sum((inverses[k1][r, c] * fan.rays[j][c] for c in range(fan.dim)), Fraction(0))
                  for j in others] for r in rows_outside]
        n = len(others)
        rows = alpha + [[int(a == b) for b in range(n)] for a in range(n)] + [[1] * n]
        bounds = [0] * (len(alpha) + n) + [1]
        if inequalities_feasible(rows, bounds):
            failures.append(ValidationFailure(
                "improper intersection",
                f"maximal cones {k1} and {k2} overlap beyond their common face",
                [sigma1.ray_indices, sigma2.ray_indices]))
    return failures


def validate(fan: Fan, deep: Optional[bool] = None, samples: Optional[int] = None,
             seed: Optional[int] = None) -> ValidationReport:
    """Check that the fan is complete and simplicial; every failure is reported, none raised"""
    if deep is None:
        deep = fan.dim <= DEEP_MAX_DIM
    samples = LOCATION_SAMPLES if samples is None else samples
    seed = LOCATION_SEED if seed is None else seed

    report = ValidationReport(
        dim=fan.dim, n_rays=fan.n_rays, n_max_cones=len(fan.max_cones),
        picard_number=fan.picard_number, deep=deep)
    report.failures.extend(_structural_failures(fan))
    if report.failures:
        logger.info("fan failed structural checks: %s", report.kinds())
        return report

    report.failures.extend(_wall_failures(fan))
    report.failures.extend(_location_failures(fan, samples, seed))
    if deep:
        report.failures.extend(_overlap_failures(fan))
    logger.info("validated fan (d=%d, %d rays, %d cones): %d failure(s)",
                fan.dim, fan.n_rays, len(fan.max_cones), len(report.failures))
    return report


def require_valid(fan: Fan, deep: Optional[bool] = None) -> ValidationReport:
    report = validate(fan, deep=deep)
    if not report.valid:
        first = report.failures[0]
        raise FanError(f"invalid fan ({first.kind}): {first.detail}")
    return report


# ---------- Cones and multiplicities ----------

@lru_cache(maxsize=None)
def _multiplicity(rays: Tuple[LatticePoint, ...]) -> int:
    return cone_multiplicity(list(rays))


def multiplicity(fan: Fan, cone: Cone) -> int:
    """[N_cone : Z-span of the cone's rays]; 1 exactly for smooth cones"""
    try:
        return _multiplicity(tuple(fan.generators(cone)))
    except LatticeError as e:
        raise FanError(f"{cone.label()} is not a simplicial cone: {e}")


def faces_of_dim(fan: Fan, k: int) -> List[Cone]:
    """All k-dimensional cones of the fan, sorted by ray indices"""
    if not 0 <= k <= fan.dim:
        raise FanError(f"no cones of dimension {k} in a fan of dimension {fan.dim}")
    faces = {Cone(sub) for sigma in fan.max_cones for sub in combinations(sigma.ray_indices, k)}
    return sorted(faces, key=lambda c: c.ray_indices)


def adjacent_rays(fan: Fan, tau: Cone) -> List[int]:
    containing = fan.cones_containing(tau)
    return sorted({i for k in containing for i in fan.max_cones[k] if i not in tau})


def _half(p: LatticePoint) -> int:
    return 0 if (p[1] > 0 or (p[1] == 0 and p[0] > 0)) else 1


def _counterclockwise(p: LatticePoint, q: LatticePoint) -> int:
    """Exact comparison realizing the counterclockwise order of nonzero plane vectors"""
    if _half(p) != _half(q):
        return -1 if _half(p) < _half(q) else 1
    cross = p[0] * q[1] - p[1] * q[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def star_surface(fan: Fan, tau: Cone) -> List[Tuple[int, LatticePoint]]:
    """Rays adjacent to a (d-2)-cone with their images in N/N_tau, counterclockwise"""
    tau = Cone(tuple(tau))
    if tau.dim != fan.dim - 2:
        raise FanError(f"{tau.label()} has dimension {tau.dim}, expected {fan.dim - 2}")
    if not fan.is_cone(tau):
        raise FanError(f"{tau.label()} is not a cone of the fan")
    adjacent = adjacent_rays(fan, tau)
    images = quotient_images(fan.generators(tau), [fan.rays[i] for i in adjacent])
    return sorted(zip(adjacent, images), key=cmp_to_key(lambda a, b: _counterclockwise(a[1], b[1])))
