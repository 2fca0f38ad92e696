import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from stablecat import catalog  # noqa: E402
from stablecat.quiver import Morphism, Representation  # noqa: E402

import oracles  # noqa: E402


def to_library(alg, rep: "oracles.Rep") -> Representation:
    vs = list(alg.vertices)
    return Representation(
        alg,
        {v: rep.dims[k] for k, v in enumerate(vs)},
        {name: m for (name, _, _), m in zip(rep.arrows, rep.maps)},
    )


def oracle_maps(f: Morphism) -> tuple:
    return tuple(np.asarray(f.maps[v]) % f.field.p for v in f.algebra.vertices)


@pytest.fixture(scope="session")
def a3_f2():
    return catalog.a3(2)


@pytest.fixture(scope="session")
def a3_f101():
    return catalog.a3(101)


@pytest.fixture(scope="session")
def six_f2():
    return catalog.six_vertex(2)


@pytest.fixture(scope="session")
def six_f101():
    return catalog.six_vertex(101)


@pytest.fixture(scope="session")
def a2_serre_f2():
    return catalog.a2_serre(2)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
