# src/surfaces.py - Toric surface arithmetic: self-intersections, contractions, crepant resolution

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from fan import Cone, Fan, FanError, multiplicity
from lattice import InternalConsistencyError, LatticePoint, ToricError, UnsupportedError, dot

logger = logging.getLogger(__name__)


class NotContractibleError(ToricError):
    """Removing the ray does not leave a fan"""


class NotGorensteinError(ToricError):
    """The surface has a non-Gorenstein cone"""


@dataclass(frozen=True)
class ContractionRelation:
    """a x1 + b x2 = q y with a, b, q the multiplicities of cone(y,x2), cone(x1,y), cone(x1,x2)"""
    x1: int
    x2: int
    y: int
    a: int
    b: int
    q: int

    @property
    def drop(self) -> Fraction:
        return Fraction(self.a ** 2 + self.b ** 2 + self.q ** 2, self.a * self.b * self.q)

    @property
    def is_crepant(self) -> bool:
        return self.a + self.b == self.q

    def primitive(self) -> Tuple[int, int, int]:
        """The coprime triple proportional to (a, b, q)"""
        g = gcd(gcd(self.a, self.b), self.q)
        return self.a // g, self.b // g, self.q // g


def _det2(u: Sequence[int], v: Sequence[int]) -> int:
    return u[0] * v[1] - u[1] * v[0]


def _require_surface(fan: Fan):
    if fan.dim != 2:
        raise UnsupportedError(f"surface computations need d=2, got d={fan.dim}")


def neighbors(fan: Fan, v: int) -> Tuple[int, int]:
    """The two rays sharing a maximal cone with v, smaller index first"""
    _require_surface(fan)
    found = sorted(i for cone in fan.max_cones if v in cone for i in cone if i != v)
    if len(found) != 2:
        raise FanError(f"ray {v} lies in {len(found)} maximal cone(s), expected 2")
    return found[0], found[1]


def self_intersection(fan: Fan, v: int, m: Optional[Sequence] = None) -> Fraction:
    """D_v^2 = -<m,u>/mult(v,u) - <m,w>/mult(v,w) for any rational m with <m,v> = 1"""
    _require_surface(fan)
    ray = fan.rays[v]
    if m is None:
        m = tuple(Fraction(x, dot(ray, ray)) for x in ray)
    if dot(m, ray) != 1:
        raise ValueError(f"dual vector {m} does not evaluate to 1 on ray {v}")
    total = Fraction(0)
    for u in neighbors(fan, v):
        total -= Fraction(dot(m, fan.rays[u])) / multiplicity(fan, Cone((v, u)))
    return total


def surface_self_intersections(fan: Fan) -> Dict[int, Fraction]:
    return {v: self_intersection(fan, v) for v in range(fan.n_rays)}


def gamma2_surface(fan: Fan) -> Fraction:
    """gamma_2 = sum of D_v^2 over the rays"""
    return sum(surface_self_intersections(fan).values(), Fraction(0))


def f(a: int, b: int) -> Fraction:
    """Half the crepant drop: (a^2 + b^2 + (a+b)^2) / (ab(a+b)) = 2 f(a, b)"""
    if a < 1 or b < 1:
        raise ValueError("f(a, b) needs positive integers")
    return Fraction(1, a) + Fraction(1, b) - Fraction(1, a + b)


# ---------- Modifications ----------

def _replace_cones(fan: Fan, removed: Sequence[Cone], added: Sequence[Tuple[int, ...]],
                   new_rays: Sequence[LatticePoint] = (), drop_ray: Optional[int] = None) -> Fan:
    rays = list(fan.rays) + list(new_rays)
    cones = [c.ray_indices for c in fan.max_cones if c not in removed] + [tuple(c) for c in added]
    if drop_ray is not None:
        rays.pop(drop_ray)
        shift = lambda i: i - 1 if i > drop_ray else i
        cones = [tuple(shift(i) for i in c) for c in cones]
    return Fan.from_lists(fan.dim, rays, cones)


def contract_ray(fan: Fan, y: int) -> Tuple[Fan, ContractionRelation]:
    """Remove ray y and merge its two cones into cone(x1, x2)"""
    _require_surface(fan)
    if fan.n_rays <= 3:
        raise NotContractibleError(f"not contractible: ray {y} of a fan with {fan.n_rays} rays")
    x1, x2 = neighbors(fan, y)
    u, w, ray = fan.rays[x1], fan.rays[x2], fan.rays[y]
    q_signed = _det2(u, w)
    a_signed, b_signed = _det2(ray, w), _det2(u, ray)
    # Cramer: q_signed * y = a_signed * x1 + b_signed * x2.
    if q_signed == 0 or a_signed * q_signed <= 0 or b_signed * q_signed <= 0:
        raise NotContractibleError(f"not contractible: ray {y} is not inside cone({x1},{x2})")

    relation = ContractionRelation(x1=x1, x2=x2, y=y, a=abs(a_signed), b=abs(b_signed), q=abs(q_signed))
    contracted = _replace_cones(
        fan, removed=[Cone((y, x1)), Cone((y, x2))], added=[(x1, x2)], drop_ray=y)
    logger.debug("contracted ray %d: %d x%d + %d x%d = %d y", y, relation.a, x1, relation.b, x2, relation.q)
    return contracted, relation


def contractible_rays(fan: Fan) -> List[int]:
    result = []
    for y in range(fan.n_rays):
        try:
            contract_ray(fan, y)
        except NotContractibleError:
            continue
        result.append(y)
    return result


def gamma2_drop(fan: Fan, y: int) -> Fraction:
    """(a^2+b^2+q^2)/(abq), checked against the direct difference of gamma_2"""
    contracted, relation = contract_ray(fan, y)
    direct = gamma2_surface(contracted) - gamma2_surface(fan)
    if relation.drop != direct:
        raise InternalConsistencyError(
            f"drop identity fails for ray {y}: formula {relation.drop}, direct {direct}")
    return relation.drop


def height_one_points(fan: Fan, cone: Cone) -> List[LatticePoint]:
    """Lattice points strictly between the two generators on the segment joining them"""
    u, w = fan.generators(cone)
    step = (w[0] - u[0], w[1] - u[1])
    g = gcd(abs(step[0]), abs(step[1]))
    return [(u[0] + t * step[0] // g, u[1] + t * step[1] // g) for t in range(1, g)]


def crepant_subdivide(fan: Fan, cone_index: int, point: LatticePoint) -> Fan:
    """Insert one lattice point of the segment between the cone's generators as a new ray"""
    _require_surface(fan)
    cone = fan.max_cones[cone_index]
    if tuple(point) not in height_one_points(fan, cone):
        raise ValueError(f"{point} is not a lattice point on the segment of {cone.label()}")
    x1, x2 = cone.ray_indices
    new = fan.n_rays
    return _replace_cones(fan, removed=[cone], added=[(x1, new), (new, x2)], new_rays=[tuple(point)])


def blowup_surface(fan: Fan, cone_index: int) -> Fan:
    """Blow up the torus-fixed point of a smooth cone (insert the sum of its generators)"""
    _require_surface(fan)
    cone = fan.max_cones[cone_index]
    if multiplicity(fan, cone) != 1:
        raise ValueError(f"{cone.label()} is singular; blow-ups are only taken at smooth points")
    x1, x2 = cone.ray_indices
    u, w = fan.generators(cone)
    new = fan.n_rays
    return _replace_cones(fan, removed=[cone], added=[(x1, new), (new, x2)],
                          new_rays=[(u[0] + w[0], u[1] + w[1])])


def crepant_resolution_surface(fan: Fan) -> Fan:
    """Subdivide every cone at all its height-one points; the result is smooth"""
    from singularities import gorenstein_report

    _require_surface(fan)
    if not gorenstein_report(fan).gorenstein:
        raise NotGorensteinError("crepant resolution needs a Gorenstein surface")
    rays = list(fan.rays)
    cones = []
    for cone in fan.max_cones:
        chain = [cone.ray_indices[0]]
        for point in height_one_points(fan, cone):
            rays.append(point)
            chain.append(len(rays) - 1)
        chain.append(cone.ray_indices[1])
        cones.extend(zip(chain, chain[1:]))
    resolved = Fan.from_lists(2, rays, cones)
    logger.debug("crepant resolution inserted %d ray(s)", resolved.n_rays - fan.n_rays)
    return resolved
