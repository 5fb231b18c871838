# src/gamma2.py - gamma_2 on quadrilateral-star surfaces, NE_2 generators and the classifier

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from class_ring import ClassRing, poly_scale
from config import get_threads
from fan import Cone, Fan, FanError, adjacent_rays, faces_of_dim, multiplicity
from lattice import InternalConsistencyError, UnsupportedError
from surfaces import gamma2_surface
from walls import ExtremalPair, WallRelation, extremal_walls_rho2, find_wall, wall_relation

logger = logging.getLogger(__name__)

POSITIVE = "positive"
NEF = "nef-not-positive"
NEITHER = "neither"
UNSUPPORTED = "unsupported"


@dataclass(frozen=True)
class QuadSurface:
    """Surface V(tau) whose star has four rays y1..y4, with maximal cones
    {y1,y3}+tau, {y2,y3}+tau, {y1,y4}+tau and {y2,y4}+tau."""
    tau: Cone
    y1: int
    y2: int
    y3: int
    y4: int
    rel3: WallRelation
    rel1: WallRelation

    @property
    def b1(self) -> int:
        return self.rel3[self.y1]

    @property
    def b2(self) -> int:
        return self.rel3[self.y2]

    @property
    def c3(self) -> int:
        return self.rel3[self.y3]

    @property
    def a(self) -> Tuple[int, ...]:
        return tuple(self.rel3[x] for x in self.tau)

    @property
    def b3(self) -> int:
        return self.rel1[self.y3]

    @property
    def b4(self) -> int:
        return self.rel1[self.y4]

    @property
    def c1(self) -> int:
        return self.rel1[self.y1]

    @property
    def e(self) -> Tuple[int, ...]:
        return tuple(self.rel1[x] for x in self.tau)

    @property
    def labels(self) -> Tuple[int, int, int, int]:
        return self.y1, self.y2, self.y3, self.y4


@dataclass
class Ne2Generators:
    """Ratio-sorted partition and the surface cones S1, S2, S3 (None when absent)"""
    pair: ExtremalPair
    x_order: Tuple[int, ...]
    y_order: Tuple[int, ...]
    x_ratios: Tuple[Fraction, ...]
    y_ratios: Tuple[Fraction, ...]
    s1: Optional[Cone]
    s2: Cone
    s3: Optional[Cone]

    @property
    def m(self) -> int:
        return len(self.x_order)

    @property
    def n(self) -> int:
        return len(self.y_order)

    @property
    def s1_absent(self) -> bool:
        return self.s1 is None

    @property
    def s3_absent(self) -> bool:
        return self.s3 is None

    def present(self) -> List[Tuple[str, Cone]]:
        return [(name, cone) for name, cone in (("S1", self.s1), ("S2", self.s2), ("S3", self.s3))
                if cone is not None]


@dataclass
class SurfaceValue:
    label: str
    tau: Cone
    value: Fraction
    method: str
    exact: Optional[Fraction] = None

    @property
    def sign(self) -> int:
        return (self.value > 0) - (self.value < 0)


@dataclass
class Gamma2Report:
    verdict: str
    entries: List[SurfaceValue] = field(default_factory=list)
    violations: List[str] = field(default_factory=list)
    reason: Optional[str] = None


def verdict_for(values: Sequence[Fraction]) -> str:
    """positive iff every value > 0; a zero is a nef boundary, never positive"""
    if not values:
        return UNSUPPORTED
    if any(v < 0 for v in values):
        return NEITHER
    if all(v > 0 for v in values):
        return POSITIVE
    return NEF


# ---------- Quadrilateral surfaces ----------

def _star_cycle(fan: Fan, tau: Cone) -> Tuple[List[int], set]:
    containing = fan.cones_containing(tau)
    if not containing:
        raise FanError(f"{tau.label()} is not a cone of the fan")
    adjacent = adjacent_rays(fan, tau)
    if len(adjacent) != 4 or len(containing) != 4:
        raise UnsupportedError("unsupported surface (ρ(S)≠2)")
    pairs = {frozenset(set(fan.max_cones[k]) - set(tau)) for k in containing}
    return adjacent, pairs


def valid_labelings(fan: Fan, tau: Cone) -> List[Tuple[int, int, int, int]]:
    """All eight (y1, y2, y3, y4) labelings compatible with the star's 4-cycle"""
    tau = Cone(tuple(tau))
    adjacent, pairs = _star_cycle(fan, tau)
    labelings = []
    for y3 in adjacent:
        neighbors = [y for y in adjacent if frozenset({y3, y}) in pairs]
        (y4,) = [y for y in adjacent if y != y3 and y not in neighbors]
        for y1, y2 in (tuple(neighbors), tuple(reversed(neighbors))):
            labelings.append((y1, y2, y3, y4))
    return labelings


def quad_surface(fan: Fan, tau: Cone, labels: Optional[Tuple[int, int, int, int]] = None) -> QuadSurface:
    """Label the star of tau: y3 smallest index, y1 < y2 its neighbours, y4 the opposite ray"""
    tau = Cone(tuple(tau))
    if tau.dim != fan.dim - 2:
        raise FanError(f"{tau.label()} has dimension {tau.dim}, expected {fan.dim - 2}")
    adjacent, pairs = _star_cycle(fan, tau)
    if labels is None:
        y3 = adjacent[0]
        y1, y2 = sorted(y for y in adjacent if frozenset({y3, y}) in pairs)
        (y4,) = [y for y in adjacent if y not in (y1, y2, y3)]
    else:
        y1, y2, y3, y4 = labels
        expected = {frozenset({y1, y3}), frozenset({y2, y3}), frozenset({y1, y4}), frozenset({y2, y4})}
        if expected != pairs:
            raise FanError(f"labels {labels} do not match the star of {tau.label()}")

    rel3 = wall_relation(fan, find_wall(fan, tau.union(y3)))
    rel1 = wall_relation(fan, find_wall(fan, tau.union(y1)))
    return QuadSurface(tau=tau, y1=y1, y2=y2, y3=y3, y4=y4, rel3=rel3, rel1=rel1)


def quad_formula(b1, b2, b3, b4, c1, c3, a: Sequence, e: Sequence) -> Fraction:
    """Positive multiple of gamma_2 . S in terms of the two labelled wall relations"""
    sum_a = sum((x * x for x in a), 0)
    sum_e = sum((x * x for x in e), 0)
    sum_ae = sum((x * y for x, y in zip(a, e)), 0)
    value = (-b3 * c1 * (b1 ** 2 + b2 ** 2 + c3 ** 2 + sum_a)
             + 2 * b1 * b3 * (b1 * c1 + b3 * c3 + sum_ae)
             - b1 * c3 * (b3 ** 2 + b4 ** 2 + c1 ** 2 + sum_e))
    return Fraction(value)


def evaluate_quad(surface: QuadSurface, scale3=1, scale1=1) -> Fraction:
    """The formula on `surface`, optionally with rel3 and rel1 rescaled by positive factors"""
    s, t = Fraction(scale3), Fraction(scale1)
    return quad_formula(
        s * surface.b1, s * surface.b2, t * surface.b3, t * surface.b4, t * surface.c1, s * surface.c3,
        [s * x for x in surface.a], [t * x for x in surface.e])


def gamma2_dot_quad(fan: Fan, tau: Cone, labels: Optional[Tuple[int, int, int, int]] = None) -> Fraction:
    """Formula value whose sign is the sign of gamma_2 . V(tau); magnitude only up to a positive factor"""
    surface = quad_surface(fan, tau, labels)
    value = evaluate_quad(surface)
    logger.debug("quadrilateral %s labels %s -> %s", tau, surface.labels, value)
    return value


# ---------- Picard number two ----------

def ne2_generators(fan: Fan, reverse_ties: bool = False) -> Ne2Generators:
    """Surfaces S1, S2, S3 generating the cone of effective 2-cycles"""
    if fan.picard_number != 2:
        raise UnsupportedError(f"NE_2 generators need Picard number 2, got {fan.picard_number}")
    if fan.dim < 3:
        raise UnsupportedError("NE_2 generators need dimension at least 3")
    pair = extremal_walls_rho2(fan)
    rx, ry = pair.x_relation, pair.y_relation

    x_last = [x for x in pair.x_side if x not in ry.ray_set()]
    y_last = [y for y in pair.y_side if y not in rx.ray_set()]
    if len(x_last) != 1 or len(y_last) != 1:
        raise InternalConsistencyError("an extremal wall misses more than one ray")
    (x_m,), (y_n,) = x_last, y_last

    def ordered(others: List[int], ratio) -> List[int]:
        tie = (lambda i: -i) if reverse_ties else (lambda i: i)
        return sorted(others, key=lambda i: (ratio(i), tie(i)))

    x_ratio = lambda x: Fraction(-ry[x], rx[x])
    y_ratio = lambda y: Fraction(-rx[y], ry[y])
    xs = ordered([x for x in pair.x_side if x != x_m], x_ratio) + [x_m]
    ys = ordered([y for y in pair.y_side if y != y_n], y_ratio) + [y_n]
    m, n = len(xs), len(ys)

    s2 = Cone(tuple(xs[1:m - 1] + ys[1:n - 1]))
    s1 = Cone(tuple(xs[0:m - 1] + ys[2:n - 1])) if n >= 3 else None
    s3 = Cone(tuple(xs[2:m - 1] + ys[0:n - 1])) if m >= 3 else None
    for name, cone in (("S1", s1), ("S2", s2), ("S3", s3)):
        if cone is not None and not fan.is_cone(cone):
            raise InternalConsistencyError(f"{name} = {cone.label()} is not a cone of the fan")

    generators = Ne2Generators(
        pair=pair, x_order=tuple(xs), y_order=tuple(ys),
        x_ratios=tuple(x_ratio(x) for x in xs[:-1]), y_ratios=tuple(y_ratio(y) for y in ys[:-1]),
        s1=s1, s2=s2, s3=s3)
    logger.debug("NE_2 generators: m=%d n=%d S1=%s S2=%s S3=%s", m, n, s1, s2, s3)
    return generators


# Monomials are (present x positions, present y positions) in the ratio order, x_m and y_n last.
_Monomial = Tuple[FrozenSet[int], FrozenSet[int]]


def _rewrite_steps(generators: Ne2Generators):
    """One substitution step on a monomial: a list of (monomial, coefficient), or None for a generator

    D_m and E_n are eliminated with a_i b_j - c_j d_i > 0 (any free x_i, y_j):
        D_m = a_m (b_j D_i + d_i E_j) / (a_i b_j - c_j d_i)
        E_n = b_n (c_j D_i + a_i E_j) / (a_i b_j - c_j d_i)
    and a present D_i1 below a free D_i2 moves up by
        D_i1 = (a_i1 / a_i2) D_i2 + (a_i1 / b_n) (d_i2 / a_i2 - d_i1 / a_i1) E_n,
    likewise for E_j1 with the roles of the relations swapped.
    """
    rx, ry = generators.pair.x_relation, generators.pair.y_relation
    a = [Fraction(rx[x]) for x in generators.x_order]
    d = [Fraction(-ry[x]) for x in generators.x_order]
    b = [Fraction(ry[y]) for y in generators.y_order]
    c = [Fraction(-rx[y]) for y in generators.y_order]
    m, n = len(a), len(b)
    xm, yn = m - 1, n - 1

    def delta(i: int, j: int) -> Fraction:
        value = a[i] * b[j] - c[j] * d[i]
        if value <= 0:
            raise InternalConsistencyError(
                f"a_i b_j - c_j d_i = {value} is not positive for x{generators.x_order[i] + 1}, "
                f"y{generators.y_order[j] + 1}")
        return value

    def step(X: FrozenSet[int], Y: FrozenSet[int]) -> Optional[List[Tuple[_Monomial, Fraction]]]:
        if len(X) == m or len(Y) == n:
            return []
        free_x = [i for i in range(xm) if i not in X]
        free_y = [j for j in range(yn) if j not in Y]
        if xm in X:
            i = free_x[-1]
            if not free_y:
                # the E_n term would contain every E_j
                return [((X - {xm} | {i}, Y), a[xm] / a[i])]
            j = free_y[-1]
            k = delta(i, j)
            return [((X - {xm} | {i}, Y), a[xm] * b[j] / k), ((X - {xm}, Y | {j}), a[xm] * d[i] / k)]
        if yn in Y:
            j = free_y[-1]
            if not free_x:
                return [((X, Y - {yn} | {j}), b[yn] / b[j])]
            i = free_x[-1]
            k = delta(i, j)
            return [((X, Y - {yn} | {j}), b[yn] * a[i] / k), ((X | {i}, Y - {yn}), b[yn] * c[j] / k)]

        def move_x(i1: int, i2: int):
            lift = a[i1] / b[yn] * (d[i2] / a[i2] - d[i1] / a[i1])
            return [((X - {i1} | {i2}, Y), a[i1] / a[i2]), ((X - {i1}, Y | {yn}), lift)]

        def move_y(j1: int, j2: int):
            lift = b[j1] / a[xm] * (c[j2] / b[j2] - c[j1] / b[j1])
            return [((X, Y - {j1} | {j2}), b[j1] / b[j2]), ((X | {xm}, Y - {j1}), lift)]

        if free_x and free_y:
            (s,), (t,) = free_x, free_y
            if s > 0:
                return move_x(0, s)
            if t > 0:
                return move_y(0, t)
            return None
        if free_x:
            s, t = free_x
            return None if t == 1 else move_x(1 if s == 0 else 0, t)
        s, t = free_y
        return None if t == 1 else move_y(1 if s == 0 else 0, t)

    return step


def _generator_name(generators: Ne2Generators, monomial: _Monomial) -> str:
    X, Y = monomial
    free = ({("x", i) for i in range(generators.m - 1) if i not in X}
            | {("y", j) for j in range(generators.n - 1) if j not in Y})
    names = {frozenset({("y", 0), ("y", 1)}): "S1",
             frozenset({("x", 0), ("y", 0)}): "S2",
             frozenset({("x", 0), ("x", 1)}): "S3"}
    return names[frozenset(free)]


def rewrite_monomial_rho2(generators: Ne2Generators, tau: Cone) -> Dict[str, Fraction]:
    """Divisor monomial of tau as a nonnegative combination of the S1, S2, S3 monomials"""
    x_pos = {x: i for i, x in enumerate(generators.x_order)}
    y_pos = {y: j for j, y in enumerate(generators.y_order)}
    start = (frozenset(x_pos[v] for v in tau if v in x_pos), frozenset(y_pos[v] for v in tau if v in y_pos))
    step = _rewrite_steps(generators)

    pending: Dict[_Monomial, Fraction] = {start: Fraction(1)}
    result: Dict[str, Fraction] = {}
    while pending:
        monomial, coeff = pending.popitem()
        terms = step(*monomial)
        if terms is None:
            name = _generator_name(generators, monomial)
            result[name] = result.get(name, Fraction(0)) + coeff
            continue
        for child, weight in terms:
            if weight < 0:
                raise InternalConsistencyError(f"negative substitution weight {weight} while rewriting {tau.label()}")
            if weight:
                pending[child] = pending.get(child, Fraction(0)) + coeff * weight
    return result


def _check_rho2_surface(fan: Fan, tau: Cone) -> Cone:
    tau = Cone(tuple(tau))
    if fan.picard_number != 2:
        raise UnsupportedError(f"surface decomposition needs Picard number 2, got {fan.picard_number}")
    if tau.dim != fan.dim - 2 or not fan.is_cone(tau):
        raise FanError(f"{tau.label()} is not a (d-2)-cone of the fan")
    return tau


def decompose_surface_rho2(fan: Fan, tau: Cone,
                           generators: Optional[Ne2Generators] = None) -> Tuple[Fraction, Fraction, Fraction]:
    """Coefficients (l1, l2, l3) with [V(tau)] = l1 S1 + l2 S2 + l3 S3; absent generators get 0

    The monomial of tau is rewritten with the two extremal relations in the ratio
    order, then rescaled by the multiplicities of tau and of each generator.
    """
    tau = _check_rho2_surface(fan, tau)
    generators = generators or ne2_generators(fan)
    coeffs = rewrite_monomial_rho2(generators, tau)
    cones = dict(generators.present())
    mult = multiplicity(fan, tau)
    result = tuple(coeffs.get(name, Fraction(0)) * mult / multiplicity(fan, cones[name]) if name in coeffs
                   else Fraction(0) for name in ("S1", "S2", "S3"))
    logger.debug("decomposition of %s: %s", tau, result)
    return result


def decompose_by_class_ring(fan: Fan, tau: Cone,
                            generators: Optional[Ne2Generators] = None,
                            ring: Optional[ClassRing] = None) -> Tuple[Fraction, Fraction, Fraction]:
    """Same coefficients as decompose_surface_rho2, found by a linear solve in the class ring"""
    tau = _check_rho2_surface(fan, tau)
    generators = generators or ne2_generators(fan)
    ring = ring or ClassRing(fan)

    present = generators.present()
    basis = [surface_class(ring, fan, cone) for _, cone in present]
    coeffs = dict(zip((name for name, _ in present), ring.reduce(surface_class(ring, fan, tau), basis)))
    return coeffs.get("S1", Fraction(0)), coeffs.get("S2", Fraction(0)), coeffs.get("S3", Fraction(0))


def surface_class(ring: ClassRing, fan: Fan, cone: Cone):
    """Class of V(cone) as a polynomial: mult(cone) times the product of its divisors"""
    return poly_scale(ring.monomial(cone), multiplicity(fan, cone))


def classify_gamma2_rho2(fan: Fan) -> Gamma2Report:
    """Sign of gamma_2 on S1, S2, S3: formula on S2, exact class-ring values everywhere"""
    generators = ne2_generators(fan)
    ring = ClassRing(fan)
    report = Gamma2Report(verdict=UNSUPPORTED)

    for name, cone in generators.present():
        exact = ring.gamma2_dot_cone(cone)
        if name == "S2":
            value = gamma2_dot_quad(fan, cone)
            entry = SurfaceValue(name, cone, value, "quadrilateral formula", exact)
            if (value > 0) - (value < 0) != (exact > 0) - (exact < 0):
                report.violations.append(
                    f"S2 {cone.label()}: formula value {value} and exact value {exact} disagree in sign")
        else:
            entry = SurfaceValue(name, cone, exact, "class ring", exact)
            if exact <= 0:
                report.violations.append(f"{name} {cone.label()}: gamma_2 . {name} = {exact} is not positive")
        report.entries.append(entry)

    report.verdict = verdict_for([e.value for e in report.entries])
    for v in report.violations:
        logger.warning(v)
    return report


def classify_gamma2_rho1(fan: Fan) -> Gamma2Report:
    """Picard number one: every (d-2)-cone evaluated exactly in the one-variable ring

    Only an all-positive result is conclusive; anything else is reported as unsupported.
    """
    ring = ClassRing(fan)
    cones = faces_of_dim(fan, fan.dim - 2)
    with ThreadPoolExecutor(max_workers=get_threads()) as pool:
        values = list(pool.map(ring.gamma2_dot_cone, cones))
    entries = [SurfaceValue(f"V{cone.ray_indices}", cone, value, "class ring", value)
               for cone, value in zip(cones, values)]
    verdict = verdict_for(values)
    if verdict == POSITIVE:
        return Gamma2Report(verdict=POSITIVE, entries=entries)
    return Gamma2Report(verdict=UNSUPPORTED, entries=entries,
                        reason=f"Picard number one in dimension {fan.dim}: values are not all positive "
                               f"({verdict}), and only the positive case is decided")


def classify_gamma2(fan: Fan) -> Gamma2Report:
    """Route by dimension and Picard number; unsupported cases are reported, not raised"""
    if fan.dim < 2:
        return Gamma2Report(verdict=UNSUPPORTED,
                            reason=f"gamma_2 is checked on surfaces, and a fan of dimension {fan.dim} has none")
    if fan.dim == 2:
        value = gamma2_surface(fan)
        return Gamma2Report(verdict=verdict_for([value]),
                            entries=[SurfaceValue("S", Cone(()), value, "surface self-intersections", value)])
    if fan.picard_number == 2:
        return classify_gamma2_rho2(fan)
    if fan.picard_number == 1:
        return classify_gamma2_rho1(fan)
    return Gamma2Report(verdict=UNSUPPORTED,
                        reason=f"gamma_2 classification needs Picard number 1 or 2 in dimension {fan.dim}")
