import itertools

import pytest

from f1rep import Quiver, linear_quiver
from f1rep.f1 import enumerate_maps
from f1rep.quiver import Arrow, RepMorphism
from f1rep.verification import fixture


@pytest.fixture(scope="session")
def A2():
    return linear_quiver(2)


@pytest.fixture(scope="session")
def A3():
    return linear_quiver(3)


@pytest.fixture(scope="session")
def Q321():
    return fixture("Q3_2_1")


def brute_morphisms(M, N):
    """Every family of per-vertex F1 maps that commutes with the arrows."""
    choices = [list(enumerate_maps(a, b)) for a, b in zip(M.dims, N.dims)]
    out = []
    for comps in itertools.product(*choices):
        ok = all(
            comps[a.target - 1](Ma(x)) == Na(comps[a.source - 1](x))
            for a, Ma, Na in zip(M.quiver.arrows, M.maps, N.maps)
            for x in range(1, M.dims[a.source - 1] + 1)
        )
        if ok:
            out.append(RepMorphism(M, N, comps))
    return out


def cyclic_quiver():
    return Quiver(2, (Arrow("x", 1, 2), Arrow("y", 2, 1)))
