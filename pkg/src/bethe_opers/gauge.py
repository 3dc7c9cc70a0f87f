"""Classification of parameter sets and gauge shifts between symmetric ones.

On a tree-shaped Dynkin diagram, any symmetric parameter set is carried to a
canonical one by shifting the argument of ``y_i`` by ``d_i``; the shifts are
accumulated along the unique path from node 1.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .bethe import BetheProblem, ParameterSet, PolyTuple, build_T
from .liealg import CartanData
from .ratpoly import Scalar, format_rational, to_rational


class GaugeError(ValueError):
    pass


@dataclass(frozen=True)
class ParameterKind:
    symmetric: bool
    ogievetsky_wiegman: bool
    special: bool

    @property
    def label(self) -> str:
        if self.special:
            return "special"
        if self.ogievetsky_wiegman:
            return "ogievetsky_wiegman"
        return "symmetric" if self.symmetric else "explicit"

    def to_json(self) -> dict:
        return {
            "symmetric": self.symmetric,
            "ogievetsky_wiegman": self.ogievetsky_wiegman,
            "special": self.special,
            "kind": self.label,
        }


def classify(params: ParameterSet, h: Scalar) -> ParameterKind:
    h = to_rational(h)
    r = params.rank
    return ParameterKind(
        symmetric=params.is_symmetric(h),
        ogievetsky_wiegman=params == ParameterSet.ogievetsky_wiegman(r, h),
        special=params == ParameterSet.special(r, h),
    )


@dataclass(frozen=True)
class GaugeShift:
    d: tuple[Fraction, ...]
    target: ParameterSet
    distances: tuple[int, ...]
    paths: tuple[tuple[int, ...], ...]

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.d)

    def to_json(self) -> dict:
        return {
            "d": [format_rational(v) for v in self.d],
            "distances": list(self.distances),
            "paths": [list(p) for p in self.paths],
            "target": [[None if v is None else format_rational(v) for v in row] for row in self.target.table()],
        }


def dynkin_paths(cartan: CartanData) -> list[tuple[int, ...]]:
    """Vertex sequence from node 1 to every node, by breadth-first search."""
    if not cartan.is_tree():
        raise GaugeError(f"Dynkin diagram of {cartan.label} is not a tree")
    parent = {1: None}
    todo = deque([1])
    while todo:
        v = todo.popleft()
        for u in cartan.neighbors(v):
            if u not in parent:
                parent[u] = v
                todo.append(u)
    paths = []
    for i in range(1, cartan.rank + 1):
        path = [i]
        while parent[path[-1]] is not None:
            path.append(parent[path[-1]])
        paths.append(tuple(reversed(path)))
    return paths


def tree_shifts(cartan: CartanData, b1: ParameterSet, h: Scalar) -> GaugeShift:
    h = to_rational(h)
    if not b1.is_symmetric(h):
        raise GaugeError("gauge shifts need symmetric parameters (b_im + b_mi = h)")
    if b1.rank != cartan.rank:
        raise GaugeError("parameter rank does not match the algebra")
    paths = dynkin_paths(cartan)
    delta = [len(p) for p in paths]
    r = cartan.rank
    b3 = {}
    for i in range(1, r + 1):
        for j in range(1, r + 1):
            if i == j:
                continue
            di, dj = delta[i - 1], delta[j - 1]
            b3[(i, j)] = h if (di < dj or (di == dj and i < j)) else Fraction(0)
    d = []
    for path in paths:
        k = len(path)
        total = sum((b1[(path[t], path[t + 1])] for t in range(k - 1)), Fraction(0))
        d.append(total - (k - 1) * h)
    target = ParameterSet(r, b3, "explicit")
    if target == ParameterSet.special(r, h):
        target = ParameterSet.special(r, h)
    return GaugeShift(tuple(d), target, tuple(delta), tuple(paths))


def transform(problem: BetheProblem, y: PolyTuple | None, shift: GaugeShift) -> tuple[BetheProblem, PolyTuple | None]:
    """Shift ``T_i`` and ``y_i`` by ``d_i`` and switch to the target parameters."""
    r = problem.rank
    if len(shift.d) != r:
        raise GaugeError(f"shift has {len(shift.d)} entries, rank is {r}")
    if shift.is_zero():
        t_polys = problem.t_polys
    else:
        t_polys = tuple(build_T(problem, i).shift(shift.d[i - 1]) for i in range(1, r + 1))
    new_problem = BetheProblem(problem.cartan, problem.h, problem.weights, problem.z, shift.target, t_polys)
    if y is None:
        return new_problem, None
    new_y = PolyTuple(y[i].shift(shift.d[i - 1]) for i in range(1, r + 1))
    return new_problem, new_y


def normalize(problem: BetheProblem, y: PolyTuple | None = None) -> tuple[GaugeShift, BetheProblem, PolyTuple | None]:
    """Carry a symmetric problem to the canonical parameters of its Dynkin tree."""
    shift = tree_shifts(problem.cartan, problem.params, problem.h)
    new_problem, new_y = transform(problem, y, shift)
    return shift, new_problem, new_y
