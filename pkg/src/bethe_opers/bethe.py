"""Bethe problem data, the polynomials T_i and Q_i, genericity and fertility.

A tuple of monic polynomials represents the roots ``t_j^{(i)}``; it is a Bethe
solution when it is generic and fertile in every direction. Where all roots
are rational, :func:`residue_check` and :func:`bethe_lhs` evaluate the
root-level equations directly and serve as independent oracles.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .liealg import CartanData, Weight, infinity_weight
from .ratpoly import (
    RatPoly,
    Scalar,
    coprime,
    rational_roots,
    solve_wronskian,
    splits_over_q,
    squarefree,
    to_rational,
)

KINDS = ("special", "ogievetsky_wiegman", "explicit")


class ProblemError(ValueError):
    """Malformed problem data."""


class NotFertileError(ValueError):
    def __init__(self, direction: int, detail: str = ""):
        self.direction = direction
        msg = f"tuple is not fertile in direction {direction}"
        super().__init__(msg + (f": {detail}" if detail else ""))


class OracleInapplicable(ValueError):
    """The residue oracle needs a squarefree y_i that splits over the rationals."""


class PoleError(ZeroDivisionError):
    pass


@dataclass(frozen=True)
class ParameterSet:
    """The shifts ``b_{i,m}`` for ordered pairs ``i != m`` (1-based)."""

    rank: int
    b: Mapping[tuple[int, int], Fraction]
    kind: str = "explicit"

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ProblemError(f"unknown parameter kind {self.kind!r}")
        want = {(i, m) for i in range(1, self.rank + 1) for m in range(1, self.rank + 1) if i != m}
        if set(self.b) != want:
            raise ProblemError(f"parameters must cover every ordered pair i != m in 1..{self.rank}")
        object.__setattr__(self, "b", {k: to_rational(v) for k, v in sorted(self.b.items())})

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        return self.b[key]

    def __hash__(self) -> int:
        return hash((self.rank, tuple(self.b.items()), self.kind))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ParameterSet):
            return NotImplemented
        return self.rank == other.rank and dict(self.b) == dict(other.b)

    @classmethod
    def special(cls, rank: int, h: Scalar) -> "ParameterSet":
        h = to_rational(h)
        b = {(i, m): (h if i < m else Fraction(0))
             for i in range(1, rank + 1) for m in range(1, rank + 1) if i != m}
        return cls(rank, b, "special")

    @classmethod
    def ogievetsky_wiegman(cls, rank: int, h: Scalar) -> "ParameterSet":
        half = to_rational(h) / 2
        b = {(i, m): half for i in range(1, rank + 1) for m in range(1, rank + 1) if i != m}
        return cls(rank, b, "ogievetsky_wiegman")

    @classmethod
    def explicit(cls, table: Mapping[tuple[int, int], object] | Sequence[Sequence[object]]) -> "ParameterSet":
        if isinstance(table, Mapping):
            b = {(int(i), int(m)): to_rational(v) for (i, m), v in table.items()}
            rank = max(max(k) for k in b) if b else 1
        else:
            rank = len(table)
            b = {(i + 1, m + 1): to_rational(table[i][m])
                 for i in range(rank) for m in range(rank) if i != m}
        return cls(rank, b, "explicit")

    def is_symmetric(self, h: Scalar) -> bool:
        h = to_rational(h)
        return all(self.b[(i, m)] + self.b[(m, i)] == h for (i, m) in self.b)

    def table(self) -> list[list[Fraction | None]]:
        return [[None if i == m else self.b[(i, m)] for m in range(1, self.rank + 1)]
                for i in range(1, self.rank + 1)]


@dataclass(frozen=True)
class BetheProblem:
    """Algebra, step, marked points with dominant weights, and parameters.

    ``t_polys`` optionally replaces the polynomials built from ``weights`` and
    ``z``; gauge transforms use it to carry node-wise shifted ``T_i``.
    """

    cartan: CartanData
    h: Fraction
    weights: tuple[Weight, ...]
    z: tuple[Fraction, ...]
    params: ParameterSet
    t_polys: tuple[RatPoly, ...] | None = field(default=None, compare=True)

    def __post_init__(self) -> None:
        object.__setattr__(self, "h", to_rational(self.h))
        object.__setattr__(self, "z", tuple(to_rational(v) for v in self.z))
        object.__setattr__(self, "weights", tuple(w if isinstance(w, Weight) else Weight(w) for w in self.weights))
        if self.h == 0:
            raise ProblemError("the step h must be non-zero")
        if len(self.weights) != len(self.z):
            raise ProblemError(f"{len(self.weights)} weights but {len(self.z)} points z")
        for s, w in enumerate(self.weights, start=1):
            if len(w) != self.cartan.rank:
                raise ProblemError(f"weight {s} has {len(w)} coordinates, rank is {self.cartan.rank}")
            if not w.is_dominant():
                raise ProblemError(f"weight {s} = {w.coords} is not dominant")
        if self.params.rank != self.cartan.rank:
            raise ProblemError(f"parameters are for rank {self.params.rank}, algebra has rank {self.cartan.rank}")
        if self.t_polys is not None and len(self.t_polys) != self.cartan.rank:
            raise ProblemError("explicit T polynomials must match the rank")

    @property
    def rank(self) -> int:
        return self.cartan.rank

    def with_params(self, params: ParameterSet) -> "BetheProblem":
        return BetheProblem(self.cartan, self.h, self.weights, self.z, params, self.t_polys)


@dataclass(frozen=True)
class PolyTuple:
    """An r-tuple of monic polynomials; a constant entry is stored as 1."""

    polys: tuple[RatPoly, ...]

    def __init__(self, polys: Iterable[RatPoly | Sequence[object]]):
        out = []
        for k, p in enumerate(polys, start=1):
            if not isinstance(p, RatPoly):
                p = RatPoly.from_json(p)
            if p.is_zero():
                raise ProblemError(f"tuple entry {k} is the zero polynomial")
            out.append(p.monic())
        object.__setattr__(self, "polys", tuple(out))

    @classmethod
    def ones(cls, rank: int) -> "PolyTuple":
        return cls([RatPoly.one()] * rank)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(p.degree for p in self.polys)

    def __getitem__(self, i: int) -> RatPoly:
        """1-based access, matching the direction indices."""
        return self.polys[i - 1]

    def __len__(self) -> int:
        return len(self.polys)

    def replace(self, i: int, p: RatPoly) -> "PolyTuple":
        ps = list(self.polys)
        ps[i - 1] = p
        return PolyTuple(ps)

    def to_json(self) -> list[list[str]]:
        return [p.to_json() for p in self.polys]


def _check_index(problem: BetheProblem, i: int) -> None:
    if not 1 <= i <= problem.rank:
        raise IndexError(f"direction {i} outside 1..{problem.rank}")


def _check_tuple(problem: BetheProblem, y: PolyTuple) -> None:
    if len(y) != problem.rank:
        raise ProblemError(f"tuple has {len(y)} entries, rank is {problem.rank}")


def build_T(problem: BetheProblem, i: int) -> RatPoly:
    _check_index(problem, i)
    if problem.t_polys is not None:
        return problem.t_polys[i - 1]
    h = problem.h
    roots = []
    for lam, z in zip(problem.weights, problem.z):
        k = lam[i - 1]
        for p in range(k):
            # factor x - z + k h/2 - p h
            roots.append(z - k * h / 2 + p * h)
    return RatPoly.from_roots(roots)


def neighbor_product(problem: BetheProblem, polys: Sequence[RatPoly], i: int) -> RatPoly:
    """``prod_{m != i} y_m(x + b_{i,m})^{-a_{i,m}}`` for any list of polynomials."""
    out = RatPoly.one()
    for m in range(1, problem.rank + 1):
        if m == i:
            continue
        e = -problem.cartan.a(i, m)
        if e:
            out = out * polys[m - 1].shift(problem.params[(i, m)]) ** e
    return out


def build_Q(problem: BetheProblem, y: PolyTuple, i: int) -> RatPoly:
    _check_index(problem, i)
    _check_tuple(problem, y)
    return build_T(problem, i) * neighbor_product(problem, y.polys, i)


@dataclass(frozen=True)
class GenericityReport:
    squarefree: tuple[bool, ...]
    coprime_shift: tuple[bool, ...]
    coprime_q: tuple[bool, ...]

    @property
    def generic(self) -> bool:
        return all(self.squarefree) and all(self.coprime_shift) and all(self.coprime_q)

    def __bool__(self) -> bool:
        return self.generic

    def to_json(self) -> dict:
        return {
            "generic": self.generic,
            "squarefree": list(self.squarefree),
            "coprime_shift": list(self.coprime_shift),
            "coprime_q": list(self.coprime_q),
        }


def is_generic(problem: BetheProblem, y: PolyTuple) -> GenericityReport:
    _check_tuple(problem, y)
    sq, sh, cq = [], [], []
    for i in range(1, problem.rank + 1):
        p = y[i]
        sq.append(squarefree(p))
        sh.append(coprime(p, p.shift(problem.h)))
        cq.append(coprime(p, build_Q(problem, y, i)))
    return GenericityReport(tuple(sq), tuple(sh), tuple(cq))


def is_fertile(problem: BetheProblem, y: PolyTuple, i: int) -> RatPoly | None:
    """The normalized solution of the i-th Wronskian equation, if any."""
    yi = y[i]
    return solve_wronskian(yi, build_Q(problem, y, i), problem.h, yi.degree)


def fertile_directions(problem: BetheProblem, y: PolyTuple) -> dict[int, RatPoly | None]:
    return {i: is_fertile(problem, y, i) for i in range(1, problem.rank + 1)}


def is_bethe(problem: BetheProblem, y: PolyTuple) -> bool:
    if not is_generic(problem, y).generic:
        return False
    return all(is_fertile(problem, y, i) is not None for i in range(1, problem.rank + 1))


def weight_at_infinity(problem: BetheProblem, y: PolyTuple) -> Weight:
    return infinity_weight(problem, y.degrees)


def residue_check(problem: BetheProblem, y: PolyTuple, i: int) -> bool:
    """Root-level fertility test: residues of Q/(y(x) y(x+h)) cancel in pairs.

    For each root ``t`` of ``y_i`` the residue at ``t`` must equal minus the
    residue at ``t - h``. Raises :class:`OracleInapplicable` unless ``y_i`` is
    squarefree, coprime to its shift and split over the rationals.
    """
    yi = y[i]
    h = problem.h
    if yi.degree <= 0:
        return True
    if not splits_over_q(yi):
        raise OracleInapplicable(f"y_{i} = {yi} does not split over the rationals")
    if not squarefree(yi) or not coprime(yi, yi.shift(h)):
        raise OracleInapplicable(f"y_{i} has repeated roots or roots differing by h")
    q = build_Q(problem, y, i)
    dy = yi.derivative()
    for t in rational_roots(yi):
        res_t = q(t) / (dy(t) * yi(t + h))
        res_th = q(t - h) / (yi(t - h) * dy(t))
        if res_t != -res_th:
            return False
    return True


def bethe_lhs(problem: BetheProblem, t: Sequence[Sequence[Scalar]], i: int, j: int) -> Fraction:
    """Left-hand side of the (i, j) Bethe equation at an explicit root assignment.

    ``t[m-1]`` lists the roots ``t_1^{(m)}, ...`` of color ``m``. The equation
    holds iff the returned value is 1.
    """
    _check_index(problem, i)
    roots = [[to_rational(v) for v in row] for row in t]
    if len(roots) != problem.rank:
        raise ProblemError(f"root assignment has {len(roots)} colors, rank is {problem.rank}")
    if not 1 <= j <= len(roots[i - 1]):
        raise IndexError(f"equation ({i},{j}) does not exist: color {i} has {len(roots[i - 1])} roots")
    h = problem.h
    tj = roots[i - 1][j - 1]
    num = Fraction(1)
    den = Fraction(1)

    def factor(n: Fraction, d: Fraction, label: str, power: int = 1) -> None:
        nonlocal num, den
        if d == 0:
            raise PoleError(f"vanishing denominator in {label}")
        num *= n ** power
        den *= d ** power

    if problem.t_polys is not None:
        tp = problem.t_polys[i - 1]
        factor(tp(tj), tp(tj - h), f"T_{i}(t - h)")
    else:
        for s, (lam, z) in enumerate(zip(problem.weights, problem.z), start=1):
            k = lam[i - 1]
            factor(tj - z + k * h / 2, tj - z - k * h / 2, f"marked point {s}")
    for m in range(1, problem.rank + 1):
        e = -problem.cartan.a(i, m)
        if m == i or e == 0:
            continue
        b = problem.params[(i, m)]
        for k, tk in enumerate(roots[m - 1], start=1):
            factor(tj - tk + b, tj - tk + b - h, f"t^({i})_{j} - t^({m})_{k} + b_{i},{m} - h", e)
    for k, tk in enumerate(roots[i - 1], start=1):
        if k != j:
            factor(tj - tk - h, tj - tk + h, f"t^({i})_{j} - t^({i})_{k} + h")
    return num / den
