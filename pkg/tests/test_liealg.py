from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bethe_opers.liealg import (
    CartanData,
    CartanError,
    Weight,
    WeylWord,
    cartan_matrix,
    degrees_for,
    find_symmetrizer,
    infinity_weight,
    langlands_dual,
    reflect,
    root_coordinates,
    shifted_action,
    simple_root,
    weyl_action,
)

from conftest import make_problem

FINITE = [("A", 1), ("A", 2), ("A", 3), ("A", 5), ("B", 2), ("B", 3), ("C", 3), ("D", 4), ("D", 5),
          ("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)]

# Weyl group orders, an independent check that the reflections generate the right group
WEYL_ORDER = {("A", 1): 2, ("A", 2): 6, ("A", 3): 24, ("B", 2): 8, ("B", 3): 48, ("C", 3): 48,
              ("D", 4): 192, ("G", 2): 12, ("F", 4): 1152}


def test_small_matrices():
    assert cartan_matrix("A", 1).matrix == ((2,),)
    assert cartan_matrix("A", 2).matrix == ((2, -1), (-1, 2))
    b2 = cartan_matrix("B", 2)
    assert sorted([b2.matrix[0][1], b2.matrix[1][0]]) == [-2, -1]
    assert b2.symmetrizer == (2, 1)


@pytest.mark.parametrize("family,rank", FINITE)
def test_invariants_of_standard_tables(family, rank):
    c = cartan_matrix(family, rank)
    r = c.rank
    for i in range(r):
        assert c.matrix[i][i] == 2
        for j in range(r):
            if i != j:
                assert c.matrix[i][j] <= 0
                assert (c.matrix[i][j] == 0) == (c.matrix[j][i] == 0)
            assert c.symmetrizer[i] * c.matrix[i][j] == c.symmetrizer[j] * c.matrix[j][i]
    assert c.is_tree()


def test_type_a_ordering_is_a_chain():
    c = cartan_matrix("A", 4)
    assert [c.neighbors(i) for i in range(1, 5)] == [[2], [1, 3], [2, 4], [3]]


@pytest.mark.parametrize("family,rank", [("G", 3), ("D", 3), ("E", 5), ("B", 1), ("A", 0), ("Z", 2)])
def test_invalid_pairs_are_rejected(family, rank):
    with pytest.raises(CartanError):
        cartan_matrix(family, rank)


def test_invalid_matrices_are_rejected():
    with pytest.raises(CartanError):
        CartanData.from_matrix([[2, -1], [0, 2]])
    with pytest.raises(CartanError):
        CartanData.from_matrix([[2, 1], [1, 2]])
    with pytest.raises(CartanError):
        CartanData.from_matrix([[3, -1], [-1, 2]])


def test_symmetrizer_for_non_symmetrizable_fails():
    with pytest.raises(CartanError):
        find_symmetrizer([[2, -1, -1], [-2, 2, -1], [-1, -1, 2]])


def test_langlands_dual():
    a3 = cartan_matrix("A", 3)
    assert langlands_dual(a3).matrix == a3.matrix
    b2 = cartan_matrix("B", 2)
    c2 = langlands_dual(b2)
    assert c2.family == "C"
    assert c2.matrix == tuple(zip(*b2.matrix))
    g2 = cartan_matrix("G", 2)
    g2d = langlands_dual(g2)
    assert g2d.family == "G"
    assert (g2d.matrix[0][1], g2d.matrix[1][0]) == (g2.matrix[1][0], g2.matrix[0][1])
    assert langlands_dual(langlands_dual(b2)).matrix == b2.matrix


def test_shifted_action_examples():
    a1 = cartan_matrix("A", 1)
    lam = Weight([1])
    assert shifted_action(a1, (), lam) == lam
    assert shifted_action(a1, (1,), lam) == Weight([-3])
    a2 = cartan_matrix("A", 2)
    w1 = Weight([1, 0])
    moved = shifted_action(a2, (2, 1), w1)
    assert root_coordinates(a2, w1 - moved) == (2, 3)


def test_degrees_for_examples():
    p1 = make_problem()
    assert degrees_for(p1, (0,), ()) == (0,)
    assert degrees_for(p1, (0,), (1,)) == (2,)
    p2 = make_problem("A", 2, weights=((1, 0),))
    assert degrees_for(p2, (0, 0), (2, 1)) == (2, 3)
    assert degrees_for(p2, (0, 0), (1, 2)) == (3, 1)


def test_infinity_weight_examples():
    p1 = make_problem()
    assert infinity_weight(p1, (0,)) == Weight([1])
    assert infinity_weight(p1, (2,)) == Weight([-3])
    p2 = make_problem("A", 2, weights=((1, 0),))
    assert infinity_weight(p2, (0, 0)) == Weight([1, 0])
    assert infinity_weight(p2, (2, 3)) == Weight([0, -4])


def test_weyl_word_checks_letters():
    assert len(WeylWord(())) == 0
    with pytest.raises(ValueError):
        WeylWord((1, 3)).check(2)
    assert WeylWord((1, 2, 3)).inverse().letters == (3, 2, 1)


def _orbit_size(cartan):
    r = cartan.rank
    start = Weight.rho(r)
    seen = {start.coords}
    todo = [start]
    while todo:
        w = todo.pop()
        for i in range(1, r + 1):
            v = reflect(cartan, i, w)
            if v.coords not in seen:
                seen.add(v.coords)
                todo.append(v)
    return len(seen)


@pytest.mark.parametrize("key", sorted(WEYL_ORDER))
def test_rho_orbit_has_weyl_group_order(key):
    # rho is regular, so its orbit is in bijection with the Weyl group
    assert _orbit_size(cartan_matrix(*key)) == WEYL_ORDER[key]


def test_reflection_fixes_and_negates():
    for fam, r in FINITE[:10]:
        c = cartan_matrix(fam, r)
        for i in range(1, r + 1):
            assert reflect(c, i, simple_root(c, i)) == simple_root(c, i) * -1


def test_inverse_is_exact():
    c = cartan_matrix("B", 3)
    inv = c.inverse
    for i in range(3):
        for j in range(3):
            s = sum(F(c.matrix[i][k]) * inv[k][j] for k in range(3))
            assert s == (1 if i == j else 0)


types = st.sampled_from([("A", 1), ("A", 2), ("A", 3), ("B", 2), ("C", 3), ("G", 2)])


@settings(max_examples=80, deadline=None)
@given(types, st.data())
def test_reflections_are_involutions_and_shifted_action_is_an_action(key, data):
    c = cartan_matrix(*key)
    r = c.rank
    lam = Weight(data.draw(st.lists(st.integers(-4, 4), min_size=r, max_size=r)))
    word = data.draw(st.lists(st.integers(1, r), max_size=4))
    for i in range(1, r + 1):
        assert reflect(c, i, reflect(c, i, lam)) == lam
        assert shifted_action(c, (i, i), lam) == lam
    rho = Weight.rho(r)
    assert shifted_action(c, word, lam) == weyl_action(c, word, lam + rho) - rho
    # composition: (uv).lam = u.(v.lam)
    u, v = word[: len(word) // 2], word[len(word) // 2:]
    assert shifted_action(c, word, lam) == shifted_action(c, u, shifted_action(c, v, lam))


@settings(max_examples=40, deadline=None)
@given(types, st.data())
def test_shifted_action_moves_by_root_lattice(key, data):
    c = cartan_matrix(*key)
    r = c.rank
    lam = Weight(data.draw(st.lists(st.integers(0, 3), min_size=r, max_size=r)))
    word = data.draw(st.lists(st.integers(1, r), max_size=4))
    coords = root_coordinates(c, lam - shifted_action(c, word, lam))
    assert all(v.denominator == 1 and v >= 0 for v in coords)
