"""Shared expensive fixtures (session-scoped: all exact objects are immutable)."""

import pytest

from gptlab.boxworld import make_boxworld2
from gptlab.spaces import make_classical, make_gbit
from gptlab.symmetry import affine_automorphisms


@pytest.fixture(scope="session")
def gbit():
    return make_gbit()


@pytest.fixture(scope="session")
def boxworld2():
    return make_boxworld2()


@pytest.fixture(scope="session")
def boxworld2_group(boxworld2):
    return affine_automorphisms(boxworld2)


@pytest.fixture(scope="session")
def classical_bit():
    return make_classical(2)
