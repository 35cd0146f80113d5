"""Shared fixtures: the small graded spaces and Lie structures used throughout."""

from fractions import Fraction

import pytest

from koszul.spaces import GradedSpace
from koszul.free_objects import FreeCommutative, LInfStructure


@pytest.fixture
def qx():
    """One generator x of degree 0, zero differential."""
    return GradedSpace("Qx", [("x", 0)])


@pytest.fixture
def v2():
    """x of degree 0 and y of degree 1, zero differential."""
    return GradedSpace("V2", [("x", 0), ("y", 1)])


@pytest.fixture
def v2d():
    """x of degree 0 and y of degree 1 with dx = y."""
    return GradedSpace("V2d", [("x", 0), ("y", 1)], {"x": {"y": 1}})


@pytest.fixture
def sl2():
    """sl2 with [e,f]=h, [h,e]=2e, [h,f]=-2f, all generators in degree 0."""
    L = GradedSpace("sl2", [("e", 0), ("f", 0), ("h", 0)])
    return LInfStructure(L, {
        2: {
            ("e", "f"): {"h": Fraction(1)},
            ("e", "h"): {"e": Fraction(-2)},
            ("f", "h"): {"f": Fraction(2)},
        }
    })


@pytest.fixture
def heis3():
    """Heisenberg algebra: [x,y] = z, generators in degree 0."""
    L = GradedSpace("heis3", [("x", 0), ("y", 0), ("z", 0)])
    return LInfStructure(L, {2: {("x", "y"): {"z": Fraction(1)}}})


@pytest.fixture
def l3():
    """Ternary fixture: a, b, c in degree 0, w in degree -1, l3(a,b,c) = w."""
    L = GradedSpace("L3", [("a", 0), ("b", 0), ("c", 0), ("w", -1)])
    return LInfStructure(L, {3: {("a", "b", "c"): {"w": Fraction(1)}}})


@pytest.fixture
def abelian2():
    """Two degree-0 generators, no differential, no brackets."""
    L = GradedSpace("ab2", [("p", 0), ("q", 0)])
    return LInfStructure(L, {})
