from __future__ import annotations

import pytest

from facecolor import corpus_path, pd
from facecolor.ribbon import loads_graph


def load_diagram(name: str) -> pd.PmDiagram:
    return pd.loads(corpus_path(name).read_text())


def load_graph(name: str):
    return loads_graph(corpus_path(name).read_text())


@pytest.fixture(scope="session")
def theta():
    return load_diagram("theta.pd")


@pytest.fixture(scope="session")
def doubletheta_a():
    return load_diagram("doubletheta_a.pd")


@pytest.fixture(scope="session")
def doubletheta_b():
    return load_diagram("doubletheta_b.pd")


@pytest.fixture(scope="session")
def k33():
    return load_diagram("k33.pd")


@pytest.fixture(scope="session")
def petersen():
    return load_diagram("pet.pd")


@pytest.fixture(scope="session")
def j3():
    return load_diagram("j3.pd")


@pytest.fixture(scope="session")
def petersen_blowup():
    return load_diagram("petbu.pd")
