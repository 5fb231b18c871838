# src/class_ring.py - Exact rational cohomology ring for Picard number one and two

import logging
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from fan import Cone, Fan, FanError, multiplicity
from lattice import InternalConsistencyError, LatticeError, UnsupportedError, solve_dependency, solve_linear
from walls import extremal_walls_rho2

logger = logging.getLogger(__name__)

# A homogeneous polynomial of degree k in P, Q: entry i is the coefficient of P^(k-i) Q^i.
Poly = Tuple[Fraction, ...]


def poly_mul(f: Poly, g: Poly) -> Poly:
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] += a * b
    return tuple(out)


def poly_add(f: Poly, g: Poly) -> Poly:
    if len(f) != len(g):
        raise ValueError("cannot add polynomials of different degrees")
    return tuple(a + b for a, b in zip(f, g))


def poly_scale(f: Poly, c) -> Poly:
    return tuple(a * c for a in f)


def poly_product(factors: Iterable[Poly]) -> Poly:
    out: Poly = (Fraction(1),)
    for f in factors:
        out = poly_mul(out, f)
    return out


def monomial_basis(degree: int) -> List[Poly]:
    return [tuple(Fraction(int(i == j)) for j in range(degree + 1)) for i in range(degree + 1)]


class ClassRing:
    """Q[P, Q] modulo the products of divisor classes over each primitive collection

    With Picard number two P, Q are dual to the extremal relations R_x, R_y, so
    [D_v] = R_x[v] P + R_y[v] Q. With Picard number one a single class P is used.
    """

    def __init__(self, fan: Fan):
        self.fan = fan
        rho = fan.picard_number
        if rho == 2:
            pair = extremal_walls_rho2(fan)
            self.classes = [(Fraction(pair.x_relation[v]), Fraction(pair.y_relation[v]))
                            for v in range(fan.n_rays)]
            collections = [pair.x_side, pair.y_side]
        elif rho == 1:
            relation = solve_dependency(fan.rays)
            if any(c <= 0 for c in relation):
                raise InternalConsistencyError("rays of a complete Picard-number-one fan must have a positive relation")
            self.classes = [(Fraction(c), Fraction(0)) for c in relation]
            collections = [tuple(range(fan.n_rays))]
        else:
            raise UnsupportedError(f"class ring is implemented for Picard number 1 or 2, got {rho}")

        self.relations = [poly_product(self.divisor(v) for v in side) for side in collections]
        reference = fan.max_cones[0]
        self._reference_monomial = self.monomial(reference)
        self._reference_degree = Fraction(1, multiplicity(fan, reference))
        logger.debug("class ring for rho=%d with relations of degrees %s",
                     rho, [len(r) - 1 for r in self.relations])

    def divisor(self, v: int) -> Poly:
        return self.classes[v]

    def monomial(self, rays: Iterable[int]) -> Poly:
        return poly_product(self.divisor(v) for v in rays)

    def _ideal_span(self, degree: int) -> List[Poly]:
        span = []
        for relation in self.relations:
            shift = degree - (len(relation) - 1)
            if shift >= 0:
                span.extend(poly_mul(relation, m) for m in monomial_basis(shift))
        return span

    def reduce(self, target: Poly, basis: Sequence[Poly]) -> Tuple[Fraction, ...]:
        """Coefficients lambda with target = sum lambda_i basis_i modulo the ideal"""
        degree = len(target) - 1
        columns = list(basis) + self._ideal_span(degree)
        matrix = [[col[k] for col in columns] for k in range(degree + 1)]
        try:
            solution = solve_linear(matrix, list(target))
        except LatticeError as e:
            raise InternalConsistencyError(f"classes do not form a basis in degree {degree}: {e}")
        return solution[:len(basis)]

    def degree(self, top: Poly) -> Fraction:
        """Degree of a top-dimensional class, normalized by deg(prod of a maximal cone) = 1/mult"""
        if len(top) - 1 != self.fan.dim:
            raise ValueError(f"expected a class of degree {self.fan.dim}, got {len(top) - 1}")
        (kappa,) = self.reduce(top, [self._reference_monomial])
        return kappa * self._reference_degree

    def gamma2(self) -> Poly:
        """gamma_2 = c1^2 - 2 c2 = sum_v [D_v]^2"""
        total: Poly = (Fraction(0),) * 3
        for v in range(self.fan.n_rays):
            total = poly_add(total, poly_mul(self.divisor(v), self.divisor(v)))
        return total

    def gamma2_dot_cone(self, tau: Cone) -> Fraction:
        """gamma_2 . V(tau) for a (d-2)-cone tau"""
        tau = Cone(tuple(tau))
        if tau.dim != self.fan.dim - 2:
            raise FanError(f"{tau.label()} has dimension {tau.dim}, expected {self.fan.dim - 2}")
        if not self.fan.is_cone(tau):
            raise FanError(f"{tau.label()} is not a cone of the fan")
        return multiplicity(self.fan, tau) * self.degree(poly_mul(self.gamma2(), self.monomial(tau)))

    def intersection_number(self, rays: Sequence[int]) -> Fraction:
        """Intersection number D_{v_1} ... D_{v_d} (rays may repeat)"""
        return self.degree(self.monomial(rays))
