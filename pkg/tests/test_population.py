from __future__ import annotations

import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bethe_opers.bethe import NotFertileError, PolyTuple, is_bethe, is_fertile, is_generic, weight_at_infinity
from bethe_opers.liealg import degrees_for, shifted_action
from bethe_opers.population import (
    InvariantError,
    _check_degree_law,
    diagonal_sequence,
    explore_cells,
    format_param,
    parameter_sequence,
    parameter_vectors,
    parse_param,
    reproduce_word,
    reproduction_family,
    simple_reproduce,
)
from bethe_opers.ratpoly import RatPoly

from conftest import make_problem
from instances import random_problem, random_walk

X = RatPoly.x()
ONE = RatPoly.one()


def test_param_parsing():
    assert parse_param("inf") is None and parse_param(None) is None
    assert parse_param("-3/4") == F(-3, 4)
    assert format_param(None) == "inf" and format_param(F(1, 2)) == "1/2"


def test_simple_reproduce_examples(sl2):
    base = PolyTuple([ONE])
    assert simple_reproduce(sl2, base, 1, None) == base
    assert simple_reproduce(sl2, base, 1, 0) == PolyTuple([X ** 2])
    assert simple_reproduce(sl2, base, 1, 1) == PolyTuple([X ** 2 - 2])


def test_simple_reproduce_not_fertile(sl2):
    with pytest.raises(NotFertileError) as info:
        simple_reproduce(sl2, PolyTuple([X]), 1, 0)
    assert info.value.direction == 1


def test_reproduce_word_examples(sl3):
    base = PolyTuple.ones(2)
    assert reproduce_word(sl3, base, (), ()).result == base
    rep = reproduce_word(sl3, base, (1, 2), (0, 0))
    assert rep.result == PolyTuple([X ** 2, X ** 3 - F(3, 2) * X ** 2 + F(1, 2) * X])
    # x^2 has a double root, so both steps are flagged as non-generic
    assert rep.flagged_steps() == [1, 2]


def test_reproduce_word_reports_failing_step(sl2):
    with pytest.raises(NotFertileError) as info:
        reproduce_word(sl2, PolyTuple([X]), (1, 1), (0, 0))
    assert "step 1" in str(info.value)


def test_reproduce_word_parameter_count(sl3):
    with pytest.raises(ValueError):
        reproduce_word(sl3, PolyTuple.ones(2), (1, 2), (0,))


def test_diagonal_sequence_examples(sl2, sl3):
    assert diagonal_sequence(sl2, PolyTuple([ONE]), (1,)).diagonal == (-(X ** 2) / 2,)
    d = diagonal_sequence(sl3, PolyTuple.ones(2), (1, 2))
    assert d.diagonal == (-(X ** 2) / 2, X ** 3 / 6 - X ** 2 / 4 + X / 12)
    assert d.check(sl3)
    assert diagonal_sequence(sl3, PolyTuple.ones(2), (2,)).diagonal == (-X,)


def test_diagonal_monic_tuples_match_reproduction(sl3):
    d = diagonal_sequence(sl3, PolyTuple.ones(2), (1, 2))
    assert d.monic_tuples()[-1] == reproduce_word(sl3, PolyTuple.ones(2), (1, 2), (0, 0)).result


def test_parameter_enumeration_is_deterministic_and_distinct():
    assert list(itertools.islice(parameter_sequence(), 5)) == [0, 1, -1, 2, -2]
    first = list(itertools.islice(parameter_vectors(2), 30))
    assert first == list(itertools.islice(parameter_vectors(2), 30))
    assert len(set(first)) == 30
    assert list(parameter_vectors(0)) == [()]


def test_explore_cells_sl2(sl2):
    rep = explore_cells(sl2, PolyTuple([ONE]), [(), (1,)], samples_per_word=3)
    by_word = {r.word.letters: r for r in rep.records}
    assert by_word[()].observed_degrees == {(0,)} and by_word[()].parameter_count == 0
    assert by_word[(1,)].observed_degrees == {(2,)} and by_word[(1,)].parameter_count == 1
    assert len(by_word[(1,)].members) == 3
    assert all(r.dimension_witness for r in rep.records)


def test_explore_cells_sl3(sl3):
    words = [(), (1,), (2,), (1, 2), (2, 1)]
    rep = explore_cells(sl3, PolyTuple.ones(2), words, samples_per_word=2)
    got = {r.word.letters: r.observed_degrees for r in rep.records}
    assert got[()] == {(0, 0)}
    assert got[(1,)] == {(2, 0)}
    assert got[(2, 1)] == {(2, 3)}
    for r in rep.records:
        assert got[r.word.letters] == {degrees_for(sl3, (0, 0), r.word)}
        assert r.independent_parameters == len(r.word)
        assert r.dimension_witness


def test_explore_cells_empty_word_list_reports_base(sl2):
    rep = explore_cells(sl2, PolyTuple([ONE]), [])
    assert [r.word.letters for r in rep.records] == [()]
    assert rep.records[0].members == [PolyTuple([ONE])]


def test_explore_cells_rejects_non_bethe_base(sl2):
    with pytest.raises(ValueError):
        explore_cells(sl2, PolyTuple([X ** 2]), [()])


def test_explore_cells_soft_warning_on_exhausted_budget(sl3):
    rep = explore_cells(sl3, PolyTuple.ones(2), [(1,)], samples_per_word=5, max_attempts=2)
    assert rep.warnings
    assert rep.records[0].warnings


def test_degree_law_violation_is_an_invariant_error(sl2):
    with pytest.raises(InvariantError):
        _check_degree_law(sl2, PolyTuple([ONE]), PolyTuple([X]), 1)


def _span_rank(polys):
    n = max(p.degree for p in polys) + 1
    rows = [[p.coeff(k) for k in range(n)] for p in polys]
    rank = 0
    basis = []
    for row in rows:
        for b, piv in basis:
            if row[piv] != 0:
                f = row[piv] / b[piv]
                row = [a - f * c for a, c in zip(row, b)]
        piv = next((k for k, v in enumerate(row) if v != 0), None)
        if piv is not None:
            basis.append((row, piv))
            rank += 1
    return rank


def test_population_coincidence_from_non_base_member(sl2, sl3):
    # reproducing a member of a family in the same direction gives back the same family
    for p, base, i in [(sl2, PolyTuple([ONE]), 1), (sl3, PolyTuple.ones(2), 1), (sl3, PolyTuple.ones(2), 2)]:
        fam = reproduction_family(p, base, i)
        member = fam.member(F(3))
        assert is_bethe(p, member)
        again = reproduction_family(p, member, i)
        span = [base[i], fam.ytilde, member[i], again.ytilde]
        assert _span_rank(span) == 2
        assert again.member(None) == member


def test_degree_law_along_random_walks():
    rng = random.Random(5)
    changed = 0
    for _ in range(40):
        p = random_problem(rng, types=[("A", 2), ("B", 2), ("G", 2)])
        for old, i, c, new in random_walk(rng, p, 3):
            if old.degrees != new.degrees:
                changed += 1
                assert weight_at_infinity(p, new) == shifted_action(p.cartan, (i,), weight_at_infinity(p, old))
    assert changed > 20


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_fertility_propagates_to_generic_outputs(seed):
    rng = random.Random(seed)
    p = random_problem(rng)
    for _, _, _, new in random_walk(rng, p, 2):
        if is_generic(p, new).generic:
            assert all(is_fertile(p, new, j) is not None for j in range(1, p.rank + 1))


@settings(max_examples=30, deadline=None)
@given(st.integers(-6, 6), st.integers(1, 3))
def test_family_members_solve_the_wronskian(num, den):
    p = make_problem("A", 2, weights=((1, 1),))
    fam = reproduction_family(p, PolyTuple.ones(2), 2)
    member = fam.member(F(num, den))
    assert member[1] == ONE
    assert member[2].degree == fam.ytilde.degree
