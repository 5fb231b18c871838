# src/singularities.py - Terminality, Gorenstein index and singular locus

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd
from typing import List, Sequence, Tuple

from config import get_threads
from fan import Cone, Fan, multiplicity
from lattice import LatticePoint, ToricError, lattice_points_in_simplex, solve_linear

logger = logging.getLogger(__name__)


@dataclass
class ConeSingularity:
    cone_index: int
    cone: Cone
    multiplicity: int
    terminal: bool
    dual_vector: Tuple[Fraction, ...]

    @property
    def index(self) -> int:
        """lcm of the denominators of the dual vector"""
        return reduce(lambda acc, x: acc * x.denominator // gcd(acc, x.denominator), self.dual_vector, 1)


@dataclass
class SingularityReport:
    cones: List[ConeSingularity] = field(default_factory=list)
    singular_cones: List[Cone] = field(default_factory=list)

    @property
    def terminal(self) -> bool:
        return all(c.terminal for c in self.cones)

    @property
    def gorenstein_index(self) -> int:
        return reduce(lambda acc, c: acc * c.index // gcd(acc, c.index), self.cones, 1)

    @property
    def gorenstein(self) -> bool:
        return self.gorenstein_index == 1

    @property
    def smooth(self) -> bool:
        return all(c.multiplicity == 1 for c in self.cones)


def is_terminal_generators(generators: Sequence[Sequence[int]]) -> bool:
    """conv(0, generators) holds no lattice points besides its vertices"""
    dim = len(generators[0])
    vertices = [tuple([0] * dim)] + [tuple(int(x) for x in g) for g in generators]
    return lattice_points_in_simplex(vertices) == set(vertices)


def is_terminal_cone(fan: Fan, cone: Cone) -> bool:
    return is_terminal_generators(fan.generators(cone))


def terminal_family_cone(d: int, p: int, c: int, strict: bool = True) -> List[LatticePoint]:
    """Generators e_1, ..., e_{d-1}, c e_d - (e_p + ... + e_{d-1}); terminal whenever 0 < c < d-p+1"""
    if d < 3 or not 1 <= p <= d - 1:
        raise ToricError(f"need d >= 3 and 1 <= p <= d-1, got d={d}, p={p}")
    if c < 1 or (strict and c >= d - p + 1):
        raise ToricError(f"need 0 < c < {d - p + 1} for d={d}, p={p}, got c={c}")
    generators = [tuple(int(i == j) for j in range(d)) for i in range(d - 1)]
    last = [0] * d
    for i in range(p - 1, d - 1):
        last[i] = -1
    last[d - 1] = c
    generators.append(tuple(last))
    return generators


def dual_vector(fan: Fan, cone: Cone) -> Tuple[Fraction, ...]:
    """The rational m with <m, v> = 1 on every generator of a maximal cone"""
    return solve_linear(fan.generators(cone), [1] * fan.dim)


def singular_cones(fan: Fan) -> List[Cone]:
    """Minimal cones of multiplicity > 1; their orbit closures cover the singular locus"""
    singular: List[Cone] = []
    # Faces of smooth cones are smooth.
    candidates = [sigma for sigma in fan.max_cones if multiplicity(fan, sigma) > 1]
    for k in range(2, fan.dim + 1):
        faces = sorted({Cone(sub) for sigma in candidates for sub in combinations(sigma.ray_indices, k)},
                       key=lambda c: c.ray_indices)
        for face in faces:
            if any(s.issubset(face) for s in singular):
                continue
            if multiplicity(fan, face) > 1:
                singular.append(face)
    return singular


def _analyze_cone(args) -> ConeSingularity:
    fan, k = args
    cone = fan.max_cones[k]
    return ConeSingularity(
        cone_index=k, cone=cone, multiplicity=multiplicity(fan, cone),
        terminal=is_terminal_cone(fan, cone), dual_vector=dual_vector(fan, cone))


def gorenstein_report(fan: Fan) -> SingularityReport:
    """Per maximal cone: multiplicity, terminality and Gorenstein dual vector, in cone order"""
    with ThreadPoolExecutor(max_workers=get_threads()) as pool:
        cones = list(pool.map(_analyze_cone, [(fan, k) for k in range(len(fan.max_cones))]))
    report = SingularityReport(cones=cones, singular_cones=singular_cones(fan))
    logger.debug("singularities: terminal=%s index=%d singular=%s",
                 report.terminal, report.gorenstein_index, [c.ray_indices for c in report.singular_cones])
    return report
