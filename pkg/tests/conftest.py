from __future__ import annotations

from pathlib import Path

import pytest

from bethe_opers.bethe import BetheProblem, ParameterSet, PolyTuple
from bethe_opers.liealg import cartan_matrix

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"


def make_problem(family="A", rank=1, weights=((1,),), z=(0,), h=1, params="special"):
    cartan = cartan_matrix(family, rank)
    if params == "special":
        ps = ParameterSet.special(rank, h)
    elif params == "ow":
        ps = ParameterSet.ogievetsky_wiegman(rank, h)
    else:
        ps = params
    return BetheProblem(cartan, h, tuple(weights), tuple(z), ps)


@pytest.fixture
def sl2():
    return make_problem()


@pytest.fixture
def sl3():
    return make_problem("A", 2, weights=((1, 0),))


@pytest.fixture
def problems_dir():
    return PROBLEMS


def ones(rank):
    return PolyTuple.ones(rank)
