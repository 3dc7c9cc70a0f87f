from __future__ import annotations

import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bethe_opers.bethe import NotFertileError, PolyTuple, is_fertile
from bethe_opers.doper import (
    RF,
    MatrixRF,
    R_function,
    _v_bar,
    bracket,
    build_V,
    chevalley_matrices,
    const_exp_nilpotent,
    const_mul,
    deform,
    exp_times,
    fundamental_solution_A,
    general_solution_vector,
    relations_check,
    verify_solution,
)
from bethe_opers.population import diagonal_sequence
from bethe_opers.ratpoly import RatPoly, discrete_wronskian

from conftest import make_problem
from instances import random_bethe_tuple, random_problem

X = RatPoly.x()
ONE = RatPoly.one()

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=5)
small_polys = st.lists(rationals, min_size=1, max_size=3).map(RatPoly).filter(lambda p: not p.is_zero())
rfs = st.builds(RF, small_polys, small_polys)


def test_rational_function_normal_form():
    f = RF(X ** 2 - 1, 2 * X + 2)
    assert f.num == (X - 1) / 2 and f.den == ONE
    assert RF(X, X) == RF.one()
    with pytest.raises(ZeroDivisionError):
        RF(ONE, RatPoly.zero())
    assert RF.from_json(f.to_json()) == f


@settings(max_examples=60, deadline=None)
@given(rfs, rfs, rfs)
def test_rational_function_field_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a - b) + b == a
    if a != RF.zero():
        assert a * a.inverse() == RF.one()
    assert (a * b).shift(F(1, 2)) == a.shift(F(1, 2)) * b.shift(F(1, 2))


def test_chevalley_brackets():
    es, fs, hs = chevalley_matrices(1)
    assert bracket(hs[0], es[0]) == [[2 * v for v in row] for row in es[0]]
    es, fs, hs = chevalley_matrices(2)
    assert bracket(hs[0], es[1]) == [[-v for v in row] for row in es[1]]


def test_relations_examples():
    assert relations_check(1, 5, 1, 1)
    assert relations_check(1, 5, 1, 2)
    assert relations_check(2, 3, 1, 2)
    assert relations_check(2, 3, 2, 1)
    with pytest.raises(ValueError):
        relations_check(1, -1, 1, 1)


def test_exchange_relation_independently():
    # exp(uF) exp(vE) for sl_2 written out by hand
    es, fs, _ = chevalley_matrices(1)
    u, v = F(2), F(3)
    lhs = const_mul(const_exp_nilpotent([[u * x for x in r] for r in fs[0]]),
                    const_exp_nilpotent([[v * x for x in r] for r in es[0]]))
    assert lhs == [[1, v], [u, 1 + u * v]]


@settings(max_examples=40, deadline=None)
@given(rationals.filter(lambda v: v != 0), rationals, st.integers(1, 2), st.integers(1, 2))
def test_relations_hold_for_random_pairs(u, v, i, j):
    if i == j and 1 + u * v == 0:
        return
    assert relations_check(u, v, i, j)


def test_R_function_and_V_sl2(sl2):
    y = PolyTuple([ONE])
    assert R_function(sl2, y, 1) == RF(X + F(1, 2))
    V = build_V(sl2, y).V
    assert V == MatrixRF([[1, 0], [RF(X + F(1, 2)), 1]])


def test_build_V_rejections():
    with pytest.raises(ValueError):
        build_V(make_problem("A", 2, weights=((1, 0),), params="ow"), PolyTuple.ones(2))
    with pytest.raises(ValueError):
        build_V(make_problem("B", 2, weights=((1, 0),)), PolyTuple.ones(2))


def test_deform_sl2(sl2):
    d = deform(sl2, PolyTuple([ONE]), 1)
    assert d.ytilde == -(X ** 2) / 2
    assert d.g == RF(-2, X ** 2)
    assert d.gauge_identity and d.riccati and d.riccati_factorization


def test_deform_sl3_both_directions(sl3):
    for i in (1, 2):
        d = deform(sl3, PolyTuple.ones(2), i)
        assert d.gauge_identity and d.riccati


def test_deform_rejects_non_solution(sl2):
    with pytest.raises(NotFertileError):
        deform(sl2, PolyTuple([ONE]), 1, ytilde=X)
    with pytest.raises(NotFertileError):
        deform(sl2, PolyTuple([X]), 1)


def test_deform_along_family_member(sl2):
    # any member ytilde + c*y of the family is an admissible deformation
    d = deform(sl2, PolyTuple([ONE]), 1, ytilde=-(X ** 2) / 2 + 3)
    assert d.gauge_identity


def test_deform_round_trip_returns_original_V(sl3):
    y = PolyTuple.ones(2)
    for i in (1, 2):
        new = deform(sl3, y, i).target.tuple
        # the old y_i, rescaled, solves the Wronskian equation of the new tuple
        q = discrete_wronskian(new[i], y[i], sl3.h)
        k = R_rhs(sl3, new, i).lc / q.lc
        back = deform(sl3, new, i, ytilde=y[i].scale(k))
        assert back.target.V == build_V(sl3, y).V


def R_rhs(problem, y, i):
    return discrete_wronskian(y[i], is_fertile(problem, y, i), problem.h)


def test_literal_sl2_formula_has_the_wrong_sign(sl2):
    """exp((y1/y) F) with y1 = -x^2/2 does not solve the equation; the opposite sign does."""
    _, fs, _ = chevalley_matrices(1)
    vbar = _v_bar(sl2, [ONE])
    literal = exp_times(RF(-(X ** 2) / 2), fs[0])
    corrected = exp_times(RF(X ** 2 / 2), fs[0])
    assert not verify_solution(vbar, literal, 1)
    assert verify_solution(vbar, corrected, 1)


def test_fundamental_solution_sl2(sl2):
    fs = fundamental_solution_A(sl2, PolyTuple([ONE]))
    assert fs.verified and fs.verified_bar and fs.det_one and fs.factors_commute
    assert fs.diagonals[0].diagonal == (-(X ** 2) / 2,)


def test_fundamental_solution_sl3(sl3):
    fs = fundamental_solution_A(sl3, PolyTuple.ones(2))
    assert fs.verified and fs.det_one and fs.factors_commute
    assert fs.diagonals[0].diagonal == (-(X ** 2) / 2, X ** 3 / 6 - X ** 2 / 4 + X / 12)
    assert fs.diagonals[1].diagonal == (-X,)
    # the three exponents of Y_bar, from the diagonal sequences with alternating signs
    _, f, _ = chevalley_matrices(2)
    assert fs.Y_bar.rows[1][0] == RF(X ** 2 / 2)


def test_right_multiplication_by_constant(sl3):
    fs = fundamental_solution_A(sl3, PolyTuple.ones(2))
    es, _, _ = chevalley_matrices(2)
    g = MatrixRF.from_const(const_exp_nilpotent([[F(5, 3) * v for v in row] for row in es[0]]))
    V = build_V(sl3, PolyTuple.ones(2)).V
    assert verify_solution(V, fs.Y @ g, 1)


def test_verify_solution_identity_and_mutation(sl2):
    I = MatrixRF.identity(3)
    assert verify_solution(I, I, F(7, 2))
    fs = fundamental_solution_A(sl2, PolyTuple([ONE]))
    V = build_V(sl2, PolyTuple([ONE])).V
    rows = [list(r) for r in fs.Y.rows]
    rows[0][0] = rows[0][0] + RF.one()
    assert not verify_solution(V, MatrixRF(rows), 1)


def test_solution_vectors(sl2, sl3):
    for p, y, word in [(sl2, PolyTuple([ONE]), ()), (sl2, PolyTuple([ONE]), (1,)),
                       (sl3, PolyTuple.ones(2), (1, 2)), (sl3, PolyTuple.ones(2), (2, 1, 2))]:
        sv = general_solution_vector(p, y, word)
        assert sv.verified
        assert sv.Y.shape == (p.rank + 1, 1)


def test_empty_word_vector_is_torus_image(sl3):
    y = PolyTuple([X ** 2 - 2, ONE])
    sv = general_solution_vector(sl3, y, ())
    assert [row[0] for row in sv.Y.rows] == [RF.zero(), RF.zero(), RF.one()]


def test_solution_vector_rejects_inconsistent_diagonal(sl3):
    d = diagonal_sequence(sl3, PolyTuple.ones(2), (1,))
    with pytest.raises(ValueError):
        general_solution_vector(sl3, PolyTuple.ones(2), (2,), diag=d)


def test_random_bethe_tuples_have_verified_solutions():
    rng = random.Random(3)
    for _ in range(4):
        p = random_problem(rng, types=[("A", 2)], max_points=1)
        y = random_bethe_tuple(rng, p, 2)
        fs = fundamental_solution_A(p, y)
        assert fs.verified and fs.det_one
        word = tuple(rng.randint(1, 2) for _ in range(rng.randint(1, 3)))
        assert general_solution_vector(p, y, word).verified
