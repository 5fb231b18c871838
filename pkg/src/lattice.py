# src/lattice.py - Exact integer/rational linear algebra and lattice points in simplices

import itertools
import logging
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import List, Sequence, Set, Tuple

import numpy as np
import sympy as sp
from sympy import ZZ
from sympy.matrices.normalforms import smith_normal_decomp

logger = logging.getLogger(__name__)

LatticePoint = Tuple[int, ...]


class ToricError(ValueError):
    """Base class for every error raised by the checker"""


class LatticeError(ToricError):
    """Bad arithmetic input (zero vector, singular or inconsistent system)"""


class DegenerateWallError(ToricError):
    """A wall whose rays do not carry a unique linear relation"""

    def __init__(self, detail: str = ""):
        message = "degenerate wall"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)


class UnsupportedError(ToricError):
    """The requested computation is outside what the checker supports"""


class InternalConsistencyError(ToricError):
    """An invariant that valid input can never break was broken"""


# ---------- Vectors ----------

def primitive_part(v: Sequence[int]) -> Tuple[LatticePoint, int]:
    """Split v into (v/g, g) with g the gcd of its coordinates"""
    coords = tuple(int(x) for x in v)
    g = reduce(gcd, coords, 0)
    if g == 0:
        raise LatticeError("zero vector has no primitive part")
    return tuple(x // g for x in coords), g


def is_primitive(v: Sequence[int]) -> bool:
    return reduce(gcd, (int(x) for x in v), 0) == 1


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v)), 0)


def integral_primitive(vec: Sequence) -> Tuple[int, ...]:
    """Scale a rational vector to a primitive integer vector, first nonzero entry positive"""
    fracs = [Fraction(x) for x in vec]
    denom = reduce(lambda acc, f: acc * f.denominator // gcd(acc, f.denominator), fracs, 1)
    ints = [int(f * denom) for f in fracs]
    g = reduce(gcd, ints, 0)
    if g == 0:
        raise LatticeError("zero vector has no primitive part")
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x != 0)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


# ---------- Matrices ----------
# sympy does the exact work; Fractions and numpy object arrays are what the rest of the package sees.

def _to_sympy(rows) -> sp.Matrix:
    fracs = [[Fraction(x) for x in row] for row in rows]
    return sp.Matrix([[sp.Rational(f.numerator, f.denominator) for f in row] for row in fracs])


def _to_fraction(x) -> Fraction:
    return Fraction(int(x.p), int(x.q))


def to_fraction_matrix(rows) -> np.ndarray:
    """Copy rows into a 2D numpy object array of Fractions"""
    return np.array([[Fraction(x) for x in row] for row in rows], dtype=object)


def row_reduce(matrix) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form and its pivot columns"""
    R, pivots = _to_sympy(matrix).rref()
    return to_fraction_matrix([[_to_fraction(x) for x in row] for row in R.tolist()]), list(pivots)


def rank(matrix) -> int:
    return _to_sympy(matrix).rank()


def kernel_basis(matrix) -> List[Tuple[Fraction, ...]]:
    """Basis of the right null space, one vector per free column"""
    return [tuple(_to_fraction(x) for x in v) for v in _to_sympy(matrix).nullspace()]


def solve_linear(matrix, rhs: Sequence) -> Tuple[Fraction, ...]:
    """Unique exact solution of matrix @ x = rhs (overdetermined but consistent systems allowed)"""
    A = _to_sympy(matrix)
    n_unknowns = A.cols
    R, pivots = A.row_join(_to_sympy([[x] for x in rhs])).rref()
    if n_unknowns in pivots:
        raise LatticeError("inconsistent linear system")
    if len(pivots) != n_unknowns:
        raise LatticeError("singular system: solution is not unique")
    return tuple(_to_fraction(R[i, n_unknowns]) for i in range(n_unknowns))


def determinant(matrix) -> Fraction:
    return _to_fraction(_to_sympy(matrix).det())


def inverse_matrix(matrix) -> np.ndarray:
    A = _to_sympy(matrix)
    if A.det() == 0:
        raise LatticeError("matrix is not invertible")
    return to_fraction_matrix([[_to_fraction(x) for x in row] for row in A.inv().tolist()])


def solve_dependency(vectors: Sequence[Sequence[int]]) -> Tuple[int, ...]:
    """The unique (up to scale) linear relation among d+1 vectors spanning R^d"""
    columns = [tuple(v) for v in vectors]
    dim = len(columns[0])
    matrix = [[columns[j][i] for j in range(len(columns))] for i in range(dim)]
    kernel = kernel_basis(matrix)
    if len(kernel) != 1:
        raise DegenerateWallError(f"kernel has dimension {len(kernel)}")
    return integral_primitive(kernel[0])


# ---------- Integer normal form ----------

def _int_array(M: sp.Matrix) -> np.ndarray:
    return np.array([[int(x) for x in row] for row in M.tolist()], dtype=object)


def integer_normal_form(rows) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Smith form D = S @ A @ T with S, T unimodular, as numpy object arrays (D, S, T)

    The rows of T^-1 form a basis of Z^d whose first rank(A)
    vectors span the saturation of the row lattice of A, so v @ T gives the
    coordinates of v in that basis.
    """
    A = sp.Matrix([[int(x) for x in row] for row in rows])
    D, S, T = smith_normal_decomp(A, domain=ZZ)
    D, S, T = _int_array(D), _int_array(S), _int_array(T)
    if not (S @ _int_array(A) @ T == D).all():
        raise InternalConsistencyError("integer normal form does not reproduce its input")
    return D, S, T


def cone_multiplicity(generators: Sequence[Sequence[int]]) -> int:
    """Index of the lattice spanned by the generators inside its saturation"""
    if not generators:
        return 1
    D, _, _ = integer_normal_form(generators)
    diagonal = [abs(D[i, i]) for i in range(len(generators))]
    if any(x == 0 for x in diagonal):
        raise LatticeError("generators are linearly dependent (cone is not simplicial)")
    return reduce(lambda acc, x: acc * x, diagonal, 1)


def quotient_images(generators: Sequence[Sequence[int]],
                    vectors: Sequence[Sequence[int]]) -> List[LatticePoint]:
    """Images of vectors in N / (span(generators) ∩ N), in a fixed lattice basis"""
    if not generators:
        return [tuple(int(x) for x in v) for v in vectors]
    k = len(generators)
    _, _, T = integer_normal_form(generators)
    images = []
    for v in vectors:
        coords = np.array([int(x) for x in v], dtype=object) @ T
        images.append(tuple(int(x) for x in coords[k:]))
    return images


# ---------- Inequalities ----------

def _normalize_inequality(row: Tuple[Fraction, ...], bound: Fraction):
    scale = next((abs(x) for x in row if x != 0), None)
    if scale is None:
        return row, bound
    return tuple(x / scale for x in row), bound / scale


def inequalities_feasible(rows: Sequence[Sequence], bounds: Sequence) -> bool:
    """Fourier-Motzkin test: does {x : row . x >= bound for every row} contain a point?"""
    system = {_normalize_inequality(tuple(Fraction(a) for a in row), Fraction(b))
              for row, b in zip(rows, bounds)}
    n_vars = len(rows[0]) if rows else 0
    for j in range(n_vars):
        positive = [c for c in system if c[0][j] > 0]
        negative = [c for c in system if c[0][j] < 0]
        combined = {c for c in system if c[0][j] == 0}
        for row_p, b_p in positive:
            for row_n, b_n in negative:
                s, t = -row_n[j], row_p[j]
                row = tuple(s * x + t * y for x, y in zip(row_p, row_n))
                combined.add(_normalize_inequality(row, s * b_p + t * b_n))
        system = combined
        if any(all(x == 0 for x in row) and b > 0 for row, b in system):
            return False
    return all(b <= 0 for _, b in system)


# ---------- Lattice points ----------

def lattice_points_in_simplex(vertices: Sequence[Sequence[int]]) -> Set[LatticePoint]:
    """All integer points of the closed simplex spanned by affinely independent vertices

    Scans the coordinate bounding box and keeps the points whose barycentric
    coordinates are nonnegative, tested exactly with the integer adjugate.
    """
    verts = [tuple(int(x) for x in v) for v in vertices]
    dim = len(verts[0])
    base = verts[0]
    edges = [tuple(v[i] - base[i] for i in range(dim)) for v in verts[1:]]
    k = len(edges)
    if k == 0:
        return {base}

    # E has the edge vectors as columns; pick k independent coordinates to solve in.
    E = sp.Matrix([[edges[j][i] for j in range(k)] for i in range(dim)])
    _, pivot_rows = E.T.rref()
    if len(pivot_rows) != k:
        raise LatticeError("simplex vertices are affinely dependent")
    pivot_rows = list(pivot_rows)
    sub = E.extract(pivot_rows, list(range(k)))
    det = int(sub.det())
    adj = np.array([[int(x) for x in row] for row in sub.adjugate().tolist()], dtype=object)
    sign = 1 if det > 0 else -1
    E = np.array([[int(x) for x in row] for row in E.tolist()], dtype=object)

    lows = [min(v[i] for v in verts) for i in range(dim)]
    highs = [max(v[i] for v in verts) for i in range(dim)]
    box = np.array(list(itertools.product(*(range(lo, hi + 1) for lo, hi in zip(lows, highs)))),
                   dtype=object)
    shifted = box - np.array(base, dtype=object)
    weights = shifted[:, pivot_rows] @ adj.T * sign
    inside = (weights >= 0).astype(bool).all(axis=1)
    inside &= (weights.sum(axis=1) <= abs(det)).astype(bool)
    if k < dim:
        on_span = (weights @ E.T == shifted * abs(det)).astype(bool).all(axis=1)
        inside &= on_span

    points = {tuple(int(x) for x in row) for row in box[inside]}
    logger.debug("simplex with %d vertices: %d lattice points in a box of %d", k + 1, len(points), len(box))
    return points


def random_unimodular(dim: int, rng, steps: int = 12) -> np.ndarray:
    """Random integer matrix of determinant ±1 built from elementary operations"""
    M = np.eye(dim, dtype=int).astype(object)
    if dim == 1:
        return M * rng.choice([1, -1])
    for _ in range(steps):
        i, j = rng.sample(range(dim), 2)
        M[i] = M[i] + rng.choice([-2, -1, 1, 2]) * M[j]
        if rng.random() < 0.2:
            M[[i, j]] = M[[j, i]]
    return M


def apply_matrix(M: np.ndarray, v: Sequence[int]) -> LatticePoint:
    return tuple(int(x) for x in M @ np.array([int(x) for x in v], dtype=object))
