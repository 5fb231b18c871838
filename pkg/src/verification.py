# src/verification.py - Worked-example fixtures re-derived by the engine, as a pass/fail table

import logging
from fractions import Fraction
from typing import Callable, List, Tuple

import pandas as pd

from catalog import (
    blowup_p2,
    gorenstein_fano_3fold,
    hirzebruch,
    projective_space,
    random_gorenstein_surfaces,
    terminal_fano_4fold,
    terminal_fano_dfold,
    weighted_p2,
)
from fan import Cone, faces_of_dim, validate
from gamma2 import classify_gamma2, decompose_by_class_ring, decompose_surface_rho2, gamma2_dot_quad, ne2_generators
from lattice import ToricError
from singularities import gorenstein_report, is_terminal_generators, terminal_family_cone
from surfaces import contractible_rays, f, gamma2_drop, gamma2_surface
from walls import is_fano

logger = logging.getLogger(__name__)

Check = Tuple[str, Callable[[], object], object]


def _example_4fold() -> List[Check]:
    entry = terminal_fano_4fold()
    fan = entry.fan
    return [
        ("4-fold: valid, ρ=2", lambda: (validate(fan).valid, fan.picard_number), (True, 2)),
        ("4-fold: terminal", lambda: gorenstein_report(fan).terminal, True),
        ("4-fold: Fano", lambda: is_fano(fan).is_fano, True),
        ("4-fold: singular cones", lambda: [c.ray_indices for c in gorenstein_report(fan).singular_cones],
         [(0, 2, 4), (1, 3, 5), (0, 3, 4, 5)]),
        ("4-fold: γ₂ on cone(x5,x6)", lambda: gamma2_dot_quad(fan, Cone((4, 5))), Fraction(8)),
        ("4-fold: verdict", lambda: classify_gamma2(fan).verdict, "positive"),
    ]


def _s2_value(fan):
    return gamma2_dot_quad(fan, ne2_generators(fan).s2)


def _example_dfold() -> List[Check]:
    checks: List[Check] = []
    for d in range(4, 11):
        k = d - 2
        checks.append((f"d-fold d={d}: S2 value", lambda d=d: _s2_value(terminal_fano_dfold(d).fan),
                       Fraction(k ** 3 - k * (d - 1))))
    for d in range(4, 7):
        checks.append((f"d-fold d={d}: terminal", lambda d=d: gorenstein_report(terminal_fano_dfold(d).fan).terminal,
                       True))
    return checks


def _example_3fold() -> List[Check]:
    fan = gorenstein_fano_3fold().fan
    return [
        ("3-fold: Gorenstein index", lambda: gorenstein_report(fan).gorenstein_index, 1),
        ("3-fold: singular cones", lambda: [c.ray_indices for c in gorenstein_report(fan).singular_cones], [(2, 3)]),
        ("3-fold: γ₂ on cone(x4)", lambda: gamma2_dot_quad(fan, Cone((3,))), Fraction(2)),
        ("3-fold: verdict", lambda: classify_gamma2(fan).verdict, "positive"),
    ]


def _surfaces() -> List[Check]:
    def family_agrees():
        family = random_gorenstein_surfaces(seed=7, count=105)
        return all((gamma2_surface(s) > 0) == (s.picard_number == 1) for s in family)

    def drops_exact():
        fans = [blowup_p2(k).fan for k in range(1, 4)] + [hirzebruch(a).fan for a in range(4)]
        return all(gamma2_drop(s, y) > 0 for s in fans for y in contractible_rays(s))

    return [
        ("γ₂(P²)", lambda: gamma2_surface(projective_space(2).fan), Fraction(3)),
        ("γ₂(F_2)", lambda: gamma2_surface(hirzebruch(2).fan), Fraction(0)),
        ("γ₂(P(1,1,2))", lambda: gamma2_surface(weighted_p2(2).fan), Fraction(3)),
        ("γ₂(P² blown up 3 times)", lambda: gamma2_surface(blowup_p2(3).fan), Fraction(-6)),
        ("Gorenstein surfaces: γ₂ > 0 iff ρ = 1", family_agrees, True),
        ("drop identity on contractible rays", drops_exact, True),
        ("f(1,1)", lambda: f(1, 1), Fraction(3, 2)),
    ]


def _terminal_family() -> List[Check]:
    def all_terminal():
        return all(is_terminal_generators(terminal_family_cone(d, p, c))
                   for d in range(3, 7) for p in range(1, d) for c in range(1, d - p + 1))

    return [
        ("terminal cone family, d=3..6", all_terminal, True),
        ("boundary case (3,2,2) not terminal", lambda: is_terminal_generators(terminal_family_cone(3, 2, 2, strict=False)),
         False),
    ]


def _decompositions() -> List[Check]:
    fans = [entry.fan for entry in (terminal_fano_4fold(), gorenstein_fano_3fold(),
                                    terminal_fano_dfold(4), terminal_fano_dfold(5))]

    def all_surfaces(check):
        for fan in fans:
            generators = ne2_generators(fan)
            if not all(check(fan, tau, generators) for tau in faces_of_dim(fan, fan.dim - 2)):
                return False
        return True

    def nonnegative(fan, tau, generators):
        return all(x >= 0 for x in decompose_surface_rho2(fan, tau, generators))

    def matches_ring(fan, tau, generators):
        return decompose_surface_rho2(fan, tau, generators) == decompose_by_class_ring(fan, tau, generators)

    return [
        ("surface classes are nonnegative in S1, S2, S3", lambda: all_surfaces(nonnegative), True),
        ("substitution agrees with the class ring", lambda: all_surfaces(matches_ring), True),
        ("4-fold: cone(x2,x3) = 2 S1 + 5 S2 + 2 S3",
         lambda: decompose_surface_rho2(fans[0], Cone((1, 2))), (2, 5, 2)),
    ]


def example_checks() -> List[Check]:
    return (_example_4fold() + _example_dfold() + _example_3fold() + _surfaces()
            + _terminal_family() + _decompositions())


def run_example_checks() -> pd.DataFrame:
    """Run every fixture; an exception counts as a failure with its message as the found value"""
    rows = []
    for name, compute, expected in example_checks():
        try:
            found = compute()
            passed = found == expected
        except ToricError as e:
            found, passed = f"error: {e}", False
        rows.append({"check": name, "expected": str(expected), "found": str(found), "passed": passed})
        logger.debug("%s: %s", name, "pass" if passed else "FAIL")
    return pd.DataFrame(rows)
