import random
from fractions import Fraction
from functools import reduce
from math import gcd

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from lattice import (
    DegenerateWallError,
    LatticeError,
    apply_matrix,
    cone_multiplicity,
    determinant,
    inequalities_feasible,
    integer_normal_form,
    integral_primitive,
    kernel_basis,
    lattice_points_in_simplex,
    primitive_part,
    quotient_images,
    random_unimodular,
    rank,
    solve_dependency,
    solve_linear,
)

small = st.integers(min_value=-6, max_value=6)


# ---------- Vectors ----------

@pytest.mark.parametrize("v, expected", [
    ((2, 4, 6), ((1, 2, 3), 2)),
    ((0, 0, 1), ((0, 0, 1), 1)),
    ((-3, 6), ((-1, 2), 3)),
])
def test_primitive_part(v, expected):
    assert primitive_part(v) == expected


def test_primitive_part_rejects_zero():
    with pytest.raises(LatticeError, match="zero vector has no primitive part"):
        primitive_part((0, 0))


@given(st.lists(small, min_size=1, max_size=5))
def test_primitive_part_factors_exactly(v):
    assume(any(v))
    p, g = primitive_part(v)
    assert tuple(g * x for x in p) == tuple(v)
    assert g > 0
    assert reduce(gcd, p, 0) == 1


def test_integral_primitive_clears_denominators_and_sign():
    assert integral_primitive([Fraction(-1, 2), 1]) == (1, -2)
    assert integral_primitive([0, Fraction(3, 4), Fraction(3, 2)]) == (0, 1, 2)


# ---------- Linear algebra ----------

def test_solve_dependency_projective_plane():
    assert solve_dependency([(1, 0), (0, 1), (-1, -1)]) == (1, 1, 1)


def test_solve_dependency_gorenstein_3fold_walls():
    # x1, x2, x3, x4 and x1, x3, x4, x5 of the Gorenstein Fano 3-fold
    assert solve_dependency([(1, 0, 0), (0, 1, 0), (0, 0, 1), (0, -2, -1)]) == (0, 2, 1, 1)
    assert solve_dependency([(1, 0, 0), (0, 0, 1), (0, -2, -1), (-1, -1, 0)]) == (2, -1, -1, 2)


def test_solve_dependency_needs_a_one_dimensional_kernel():
    vectors = [(0, 0, 1), (0, -2, -1), (1, 0, 0), (-1, -1, 0), (0, 1, 0)]
    with pytest.raises(DegenerateWallError, match="kernel has dimension 2"):
        solve_dependency(vectors)


def test_solve_dependency_terminal_4fold_wall():
    # x1, x3, x4, x5, x6 of the terminal Fano 4-fold
    vectors = [(1, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (-1, -2, -1, 0), (0, -1, -2, -1)]
    assert solve_dependency(vectors) == (1, -3, -2, 1, -2)


def test_solve_dependency_degenerate():
    with pytest.raises(DegenerateWallError, match="degenerate wall"):
        solve_dependency([(1, 0), (2, 0), (3, 0)])


def test_kernel_and_rank():
    matrix = [[1, 0, -1], [0, 1, -1]]
    assert rank(matrix) == 2
    assert kernel_basis(matrix) == [(Fraction(1), Fraction(1), Fraction(1))]


def test_solve_linear_errors():
    assert solve_linear([[2, 0], [0, 3]], [1, 1]) == (Fraction(1, 2), Fraction(1, 3))
    with pytest.raises(LatticeError, match="inconsistent"):
        solve_linear([[1], [1]], [1, 2])
    with pytest.raises(LatticeError, match="singular"):
        solve_linear([[1, 1]], [1])


def test_determinant_exact():
    assert determinant([[1, 2], [3, 4]]) == -2
    assert determinant([[Fraction(1, 2), 0], [0, Fraction(2, 3)]]) == Fraction(1, 3)
    assert determinant([[1, 2], [2, 4]]) == 0


# ---------- Normal form and multiplicities ----------

@settings(max_examples=60, deadline=None)
@given(st.lists(small, min_size=9, max_size=9))
def test_multiplicity_of_full_cone_is_abs_determinant(entries):
    rows = [entries[0:3], entries[3:6], entries[6:9]]
    det = determinant(rows)
    assume(det != 0)
    assert cone_multiplicity(rows) == abs(det)


@settings(max_examples=40, deadline=None)
@given(st.lists(small, min_size=6, max_size=6))
def test_normal_form_is_a_unimodular_diagonalisation(entries):
    rows = [entries[0:3], entries[3:6]]
    D, S, T = integer_normal_form(rows)
    assert determinant(S.tolist()) in (1, -1)
    assert determinant(T.tolist()) in (1, -1)
    assert all(D[i, j] == 0 for i in range(2) for j in range(3) if i != j)
    assert ((S @ np.array(rows, dtype=object) @ T) == D).all()
    if D[0, 0] != 0:
        assert D[1, 1] % D[0, 0] == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_multiplicity_is_unimodular_invariant(seed):
    rng = random.Random(seed)
    M = random_unimodular(3, rng, steps=6)
    assert determinant(M.tolist()) in (1, -1)
    generators = [(1, 0, 0), (1, 2, 0), (0, 1, 3)]
    moved = [apply_matrix(M, g) for g in generators]
    assert cone_multiplicity(moved) == cone_multiplicity(generators) == 6
    partial = [(1, 0, 0), (1, 2, 0)]
    assert cone_multiplicity([apply_matrix(M, g) for g in partial]) == cone_multiplicity(partial) == 2


def test_multiplicity_examples():
    assert cone_multiplicity([]) == 1
    assert cone_multiplicity([(0, 1), (-1, -2)]) == 1
    assert cone_multiplicity([(1, 0), (-1, -2)]) == 2
    assert cone_multiplicity([(2, -1), (-1, 2)]) == 3
    with pytest.raises(LatticeError):
        cone_multiplicity([(1, 0), (2, 0)])


def test_quotient_images_by_coordinate_axis():
    e2, shifted_e3, e3, diagonal, e1 = quotient_images(
        [(1, 0, 0)], [(0, 1, 0), (5, 0, 1), (0, 0, 1), (-1, -1, -1), (1, 0, 0)])
    assert e1 == (0, 0)
    assert shifted_e3 == e3
    assert diagonal == tuple(-a - b for a, b in zip(e2, e3))
    assert determinant([e2, e3]) in (1, -1)


def test_quotient_images_by_a_non_saturated_cone():
    # the span meets N in the first two coordinates, leaving a rank one quotient
    assert quotient_images([(1, 0, 0), (1, 2, 0)], [(0, 1, 0), (0, 0, 1)])[0] == (0,)
    assert quotient_images([(1, 0, 0), (1, 2, 0)], [(0, 0, 1)])[0] in ((1,), (-1,))


# ---------- Inequalities ----------

def test_inequalities_feasible():
    assert inequalities_feasible([[1], [-1]], [1, -2])
    assert not inequalities_feasible([[1], [-1]], [1, 0])
    # x >= 0, y >= 0, x + y >= 1, -x - y >= 0 is empty
    assert not inequalities_feasible([[1, 0], [0, 1], [1, 1], [-1, -1]], [0, 0, 1, 0])


# ---------- Lattice points ----------

def test_unimodular_triangle():
    assert lattice_points_in_simplex([(0, 0), (1, 0), (0, 1)]) == {(0, 0), (1, 0), (0, 1)}


def test_terminal_tetrahedron_has_only_vertices():
    vertices = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, -1, 1)]
    assert lattice_points_in_simplex(vertices) == set(vertices)


def test_non_terminal_triangle_has_wall_point():
    assert lattice_points_in_simplex([(0, 0), (1, 0), (1, 2)]) == {(0, 0), (1, 0), (1, 1), (1, 2)}


def test_lower_dimensional_simplex():
    assert lattice_points_in_simplex([(0, 0), (2, 2)]) == {(0, 0), (1, 1), (2, 2)}
    assert lattice_points_in_simplex([(0, 0, 0), (2, 0, 0), (0, 2, 0)]) == {
        (0, 0, 0), (1, 0, 0), (2, 0, 0), (0, 1, 0), (1, 1, 0), (0, 2, 0)}


def test_dependent_vertices_rejected():
    with pytest.raises(LatticeError, match="affinely dependent"):
        lattice_points_in_simplex([(0, 0), (1, 1), (2, 2)])


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6), st.integers(1, 4), st.integers(1, 4))
def test_point_count_is_unimodular_invariant(seed, a, b):
    M = random_unimodular(2, random.Random(seed), steps=3)
    vertices = [(0, 0), (a, 0), (0, b)]
    moved = [apply_matrix(M, v) for v in vertices]
    assert len(lattice_points_in_simplex(moved)) == len(lattice_points_in_simplex(vertices))
