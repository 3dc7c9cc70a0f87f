"""Seeded random problem and tuple generators shared by the test modules."""

from __future__ import annotations

import random
from fractions import Fraction as F

from bethe_opers.bethe import BetheProblem, NotFertileError, ParameterSet, PolyTuple, is_bethe, is_generic
from bethe_opers.liealg import cartan_matrix
from bethe_opers.population import simple_reproduce
from bethe_opers.ratpoly import RatPoly

SMALL_TYPES = [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("G", 2)]


def random_problem(rng: random.Random, types=SMALL_TYPES, max_points: int = 2, params: str = "special") -> BetheProblem:
    family, rank = rng.choice(types)
    n = rng.randint(1, max_points)
    weights = []
    for _ in range(n):
        w = [rng.randint(0, 2) for _ in range(rank)]
        if not any(w):
            w[rng.randrange(rank)] = 1
        weights.append(tuple(w))
    z = rng.sample([F(k, 2) for k in range(-6, 7)], n)
    h = rng.choice([F(1), F(1, 2)])
    ps = ParameterSet.special(rank, h) if params == "special" else ParameterSet.ogievetsky_wiegman(rank, h)
    return BetheProblem(cartan_matrix(family, rank), h, tuple(weights), tuple(z), ps)


def random_param(rng: random.Random) -> F:
    return F(rng.randint(-5, 5), rng.choice([1, 1, 2, 3]))


def random_walk(rng: random.Random, problem: BetheProblem, length: int):
    """Reproduce from the all-ones tuple; yields (old, direction, param, new) per step.

    Each step starts from a Bethe tuple, and a non-generic output is
    replaced by a fresh draw, so the walk stays inside the population.
    """
    cur = PolyTuple.ones(problem.rank)
    for _ in range(length):
        i = rng.randint(1, problem.rank)
        for _ in range(8):
            c = random_param(rng)
            try:
                new = simple_reproduce(problem, cur, i, c)
            except NotFertileError:
                raise AssertionError(f"Bethe tuple {cur.to_json()} not fertile in direction {i}")
            yield cur, i, c, new
            if is_generic(problem, new).generic:
                cur = new
                break


def random_bethe_tuple(rng: random.Random, problem: BetheProblem, length: int) -> PolyTuple:
    cur = PolyTuple.ones(problem.rank)
    for _, _, _, new in random_walk(rng, problem, length):
        if is_generic(problem, new).generic:
            cur = new
    assert is_bethe(problem, cur)
    return cur


def random_split_tuple(rng: random.Random, rank: int, max_degree: int = 2) -> PolyTuple:
    return PolyTuple(
        RatPoly.from_roots([F(rng.randint(-6, 6), rng.choice([1, 2])) for _ in range(rng.randint(0, max_degree))])
        for _ in range(rank)
    )
