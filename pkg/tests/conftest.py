# tests/conftest.py - Put src/ on the import path and share catalog fans

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from catalog import (  # noqa: E402
    get_entry,
    gorenstein_fano_3fold,
    hirzebruch,
    list_entries,
    projective_space,
    terminal_fano_4fold,
    terminal_fano_dfold,
    weighted_p2,
)


@pytest.fixture(scope="session")
def fano4():
    return terminal_fano_4fold().fan


@pytest.fixture(scope="session")
def fano3():
    return gorenstein_fano_3fold().fan


@pytest.fixture(scope="session")
def dfold4():
    return terminal_fano_dfold(4).fan


@pytest.fixture(scope="session")
def p2():
    return projective_space(2).fan


@pytest.fixture(scope="session")
def p3():
    return projective_space(3).fan


@pytest.fixture(scope="session")
def p112():
    return weighted_p2(2).fan


@pytest.fixture(scope="session")
def f2():
    return hirzebruch(2).fan


@pytest.fixture(scope="session")
def rho2_fans():
    """Every Picard-number-two catalog fan at default parameters plus larger members of the d-fold family"""
    fans = [get_entry(name).fan for name, _ in list_entries()]
    fans += [terminal_fano_dfold(d).fan for d in range(5, 8)]
    return [fan for fan in fans if fan.picard_number == 2]


@pytest.fixture(autouse=True)
def _single_thread(monkeypatch):
    monkeypatch.delenv("GAMMA2_THREADS", raising=False)
    monkeypatch.delenv("DEBUG", raising=False)
