from __future__ import annotations

from pathlib import Path

import pytest

from dislat import dsl

DATA = Path(__file__).parent / "data"


def load(name: str):
    return dsl.elaborate(dsl.parse_file(str(DATA / name)))


@pytest.fixture(scope="session")
def ex2():
    """10-element worked example: adjunct elements a5, a6, a8; top join-irreducible."""
    return load("ex2.adl")


@pytest.fixture(scope="session")
def fig2():
    """18-element reduction example whose basic block has 9 elements."""
    return load("fig2.adl")


@pytest.fixture(scope="session")
def m2():
    return load("m2.adl")


@pytest.fixture(scope="session")
def m3():
    return load("m3.adl")


@pytest.fixture(scope="session")
def k22():
    return load("k22.adl")


@pytest.fixture(scope="session")
def negssc():
    """0 < p < q < 1 with an extra atom r: fails SSC."""
    return load("negssc.adl")


@pytest.fixture(scope="session")
def chain4():
    return load("chain4.adl")
