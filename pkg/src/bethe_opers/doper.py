"""Discrete Miura opers in the defining representation of sl(r+1).

Everything is exact: entries are reduced rational functions over the
rationals, exponentials of nilpotent matrices are finite sums, and identity
checks compare numerators after clearing denominators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .bethe import BetheProblem, NotFertileError, ParameterSet, PolyTuple, build_T, is_fertile, neighbor_product
from .population import DiagonalSequence, InvariantError, diagonal_sequence
from .ratpoly import RatPoly, Scalar, gcd, to_rational

ConstMatrix = list[list[Fraction]]


class RationalFunction:
    """Reduced quotient of polynomials with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: RatPoly | Scalar, den: RatPoly | Scalar = 1, *, reduced: bool = False):
        if not isinstance(num, RatPoly):
            num = RatPoly.constant(num)
        if not isinstance(den, RatPoly):
            den = RatPoly.constant(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = RatPoly.zero(), RatPoly.one()
        elif not reduced:
            if den.degree > 0:
                g = gcd(num, den)
                if g.degree > 0:
                    num, den = num.exact_div(g), den.exact_div(g)
            lead = den.lc
            if lead != 1:
                num, den = num / lead, den / lead
        self.num = num
        self.den = den

    @classmethod
    def zero(cls) -> "RationalFunction":
        return cls(RatPoly.zero(), RatPoly.one(), reduced=True)

    @classmethod
    def one(cls) -> "RationalFunction":
        return cls(RatPoly.one(), RatPoly.one(), reduced=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def _lift(self, other: object) -> "RationalFunction | None":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, RatPoly):
            return RationalFunction(other, RatPoly.one(), reduced=True)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return RationalFunction(RatPoly.constant(other), RatPoly.one(), reduced=True)
        return None

    def __add__(self, other: object) -> "RationalFunction":
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            return self
        if self.is_zero():
            return o
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den, reduced=True)

    def __sub__(self, other: object) -> "RationalFunction":
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> "RationalFunction":
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: object) -> "RationalFunction":
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return RationalFunction.zero()
        if o.den.degree == 0 and o.num.degree == 0:
            return RationalFunction(self.num.scale(o.num.lc), self.den, reduced=True)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other: object) -> "RationalFunction":
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: object) -> "RationalFunction":
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> "RationalFunction":
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunction(self.num ** n, self.den ** n, reduced=True)

    def shift(self, a: Scalar) -> "RationalFunction":
        return RationalFunction(self.num.shift(a), self.den.shift(a), reduced=True)

    def evaluate(self, t: Scalar) -> Fraction:
        d = self.den(t)
        if d == 0:
            raise ZeroDivisionError(f"pole at {t}")
        return self.num(t) / d

    def __eq__(self, other: object) -> bool:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        if self.den == 1:
            return f"RF({self.num})"
        return f"RF(({self.num}) / ({self.den}))"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "RationalFunction":
        return cls(RatPoly.from_json(data["num"]), RatPoly.from_json(data["den"]))


RF = RationalFunction


class MatrixRF:
    """Rectangular matrix of rational functions (vectors are n x 1)."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence[object]]):
        self.rows: tuple[tuple[RF, ...], ...] = tuple(
            tuple(e if isinstance(e, RF) else RF(e) for e in row) for row in rows
        )

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    @classmethod
    def identity(cls, n: int) -> "MatrixRF":
        return cls([[RF.one() if i == j else RF.zero() for j in range(n)] for i in range(n)])

    @classmethod
    def from_const(cls, m: ConstMatrix, scale: RF | None = None) -> "MatrixRF":
        s = scale if scale is not None else RF.one()
        return cls([[s * v if v else RF.zero() for v in row] for row in m])

    @classmethod
    def column(cls, entries: Sequence[object]) -> "MatrixRF":
        return cls([[e] for e in entries])

    def __matmul__(self, other: "MatrixRF") -> "MatrixRF":
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        for i in range(n):
            row = []
            for j in range(m):
                acc = RF.zero()
                for t in range(k):
                    a = self.rows[i][t]
                    if a.is_zero():
                        continue
                    b = other.rows[t][j]
                    if b.is_zero():
                        continue
                    acc = acc + a * b
                row.append(acc)
            out.append(row)
        return MatrixRF(out)

    def __add__(self, other: "MatrixRF") -> "MatrixRF":
        return MatrixRF([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other: "MatrixRF") -> "MatrixRF":
        return MatrixRF([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def scale(self, s: RF) -> "MatrixRF":
        return MatrixRF([[s * a for a in row] for row in self.rows])

    def shift(self, a: Scalar) -> "MatrixRF":
        return MatrixRF([[e.shift(a) for e in row] for row in self.rows])

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.rows for e in row)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatrixRF):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> RF:
        i, j = ij
        return self.rows[i][j]

    def det(self) -> RF:
        n, m = self.shape
        if n != m:
            raise ValueError("determinant of a non-square matrix")
        a = [list(r) for r in self.rows]
        sign = 1
        det = RF.one()
        for c in range(n):
            pivot = next((k for k in range(c, n) if not a[k][c].is_zero()), None)
            if pivot is None:
                return RF.zero()
            if pivot != c:
                a[c], a[pivot] = a[pivot], a[c]
                sign = -sign
            pv = a[c][c]
            det = det * pv
            inv = pv.inverse()
            for k in range(c + 1, n):
                if a[k][c].is_zero():
                    continue
                f = a[k][c] * inv
                a[k] = [x - f * y for x, y in zip(a[k], a[c])]
        return det if sign > 0 else -det

    def to_json(self) -> list[list[dict]]:
        return [[e.to_json() for e in row] for row in self.rows]

    def __repr__(self) -> str:
        return "MatrixRF(" + repr([list(r) for r in self.rows]) + ")"


# -- constant matrices ------------------------------------------------------

def _unit(n: int, i: int, j: int) -> ConstMatrix:
    m = [[Fraction(0)] * n for _ in range(n)]
    m[i][j] = Fraction(1)
    return m


def const_mul(a: ConstMatrix, b: ConstMatrix) -> ConstMatrix:
    n, k, m = len(a), len(b), len(b[0])
    return [[sum((a[i][t] * b[t][j] for t in range(k)), Fraction(0)) for j in range(m)] for i in range(n)]


def const_add(a: ConstMatrix, b: ConstMatrix, s: Fraction = Fraction(1)) -> ConstMatrix:
    return [[x + s * y for x, y in zip(r1, r2)] for r1, r2 in zip(a, b)]


def bracket(a: ConstMatrix, b: ConstMatrix) -> ConstMatrix:
    return const_add(const_mul(a, b), const_mul(b, a), Fraction(-1))


def const_identity(n: int) -> ConstMatrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def const_exp_nilpotent(m: ConstMatrix) -> ConstMatrix:
    n = len(m)
    out = const_identity(n)
    power = const_identity(n)
    for k in range(1, n + 1):
        power = const_mul(power, m)
        if all(v == 0 for row in power for v in row):
            return out
        out = const_add(out, power, Fraction(1, factorial(k)))
    raise ValueError("matrix is not nilpotent")


def chevalley_matrices(rank: int) -> tuple[list[ConstMatrix], list[ConstMatrix], list[ConstMatrix]]:
    """Chevalley generators E_i, F_i, H_i of sl(rank+1) (lists indexed from 0)."""
    if rank < 1:
        raise ValueError("rank must be positive")
    n = rank + 1
    es = [_unit(n, i, i + 1) for i in range(rank)]
    fs = [_unit(n, i + 1, i) for i in range(rank)]
    hs = [const_add(_unit(n, i, i), _unit(n, i + 1, i + 1), Fraction(-1)) for i in range(rank)]
    a = [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(rank)] for i in range(rank)]
    for i in range(rank):
        for j in range(rank):
            # [H_j, E_i] = a_ij E_i, [H_j, F_i] = -a_ij F_i, [E_i, F_j] = delta_ij H_i
            if bracket(hs[j], es[i]) != [[a[i][j] * v for v in row] for row in es[i]]:
                raise InvariantError("[H, E] relation failed")
            if bracket(hs[j], fs[i]) != [[-a[i][j] * v for v in row] for row in fs[i]]:
                raise InvariantError("[H, F] relation failed")
            want = hs[i] if i == j else [[Fraction(0)] * n for _ in range(n)]
            if bracket(es[i], fs[j]) != want:
                raise InvariantError("[E, F] relation failed")
    return es, fs, hs


def torus_power(n: int, j: int, u: Fraction, power: int = 1) -> ConstMatrix:
    """``u^{power H_j}`` for a non-zero scalar u (j is 1-based)."""
    m = const_identity(n)
    m[j - 1][j - 1] = u ** power
    m[j][j] = u ** (-power)
    return m


def relations_check(u: Scalar, v: Scalar, i: int, j: int, rank: int = 2) -> bool:
    """Check the commutation relations between torus, E and F exponentials.

    Identities 1 and 2 use the pair (i, j); identity 3 is checked when
    ``i != j`` and identity 4 when ``i == j``.
    """
    u, v = to_rational(u), to_rational(v)
    if u == 0:
        raise ValueError("u must be non-zero")
    if not (1 <= i <= rank and 1 <= j <= rank):
        raise IndexError("indices out of range")
    es, fs, _ = chevalley_matrices(rank)
    n = rank + 1
    a_ij = 2 if i == j else (-1 if abs(i - j) == 1 else 0)

    def ex(c: Fraction, m: ConstMatrix) -> ConstMatrix:
        return const_exp_nilpotent([[c * x for x in row] for row in m])

    uh = torus_power(n, j, u)
    ok = const_mul(uh, ex(v, es[i - 1])) == const_mul(ex(u ** a_ij * v, es[i - 1]), uh)
    ok &= const_mul(uh, ex(v, fs[i - 1])) == const_mul(ex(u ** (-a_ij) * v, fs[i - 1]), uh)
    if i != j:
        ok &= const_mul(ex(u, fs[i - 1]), ex(v, es[j - 1])) == const_mul(ex(v, es[j - 1]), ex(u, fs[i - 1]))
    else:
        s = 1 + u * v
        if s == 0:
            raise ValueError("the F/E exchange relation needs 1 + u*v != 0")
        lhs = const_mul(ex(u, fs[i - 1]), ex(v, es[i - 1]))
        rhs = const_mul(const_mul(ex(v / s, es[i - 1]), torus_power(n, i, s, -1)), ex(u / s, fs[i - 1]))
        ok &= lhs == rhs
    return bool(ok)


# -- rational-function valued group elements --------------------------------

def exp_nilpotent(m: MatrixRF) -> MatrixRF:
    n = m.shape[0]
    out = MatrixRF.identity(n)
    power = MatrixRF.identity(n)
    for k in range(1, n + 1):
        power = power @ m
        if power.is_zero():
            return out
        out = out + power.scale(RF(Fraction(1, factorial(k))))
    raise ValueError("matrix is not nilpotent")


def exp_times(f: RF, generator: ConstMatrix) -> MatrixRF:
    """``exp(f * N)`` for a constant nilpotent N and scalar function f."""
    return exp_nilpotent(MatrixRF.from_const(generator, f))


def torus_rf(n: int, j: int, f: RF, power: int = 1) -> MatrixRF:
    """``f^{power H_j}``: diagonal with f^power at j and f^-power at j+1."""
    rows = [[RF.one() if a == b else RF.zero() for b in range(n)] for a in range(n)]
    rows[j - 1][j - 1] = f ** power
    rows[j][j] = f ** (-power)
    return MatrixRF(rows)


def torus_product(polys: Sequence[RatPoly], power: int, shift: Scalar = 0) -> MatrixRF:
    """``prod_j y_j(x + shift)^{power H_j}``; the factors commute."""
    n = len(polys) + 1
    diag = [RF.one() for _ in range(n)]
    for j, p in enumerate(polys):
        f = RF(p.shift(shift))
        diag[j] = diag[j] * f ** power
        diag[j + 1] = diag[j + 1] * f ** (-power)
    return MatrixRF([[diag[a] if a == b else RF.zero() for b in range(n)] for a in range(n)])


def _require_type_a(problem: BetheProblem) -> None:
    c = problem.cartan
    r = c.rank
    want = tuple(tuple(2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(r)) for i in range(r))
    if c.matrix != want:
        raise ValueError(f"matrix realization is implemented for type A only, got {c.label}")


def _require_special(problem: BetheProblem) -> None:
    if problem.params != ParameterSet.special(problem.rank, problem.h):
        raise ValueError("Miura d-opers are built for the special symmetric parameters only")


def R_function(problem: BetheProblem, y: PolyTuple | Sequence[RatPoly], i: int) -> RF:
    polys = y.polys if isinstance(y, PolyTuple) else tuple(y)
    yi = polys[i - 1]
    num = build_T(problem, i) * neighbor_product(problem, polys, i)
    return RF(num, yi.shift(problem.h) * yi)


def _v_bar(problem: BetheProblem, polys: Sequence[RatPoly]) -> MatrixRF:
    _, fs, _ = chevalley_matrices(problem.rank)
    out = MatrixRF.identity(problem.rank + 1)
    for i in range(1, problem.rank + 1):
        out = out @ exp_times(R_function(problem, polys, i), fs[i - 1])
    return out


def v_matrix(problem: BetheProblem, polys: Sequence[RatPoly]) -> MatrixRF:
    """V(x) for an arbitrary (not necessarily monic) list of non-zero polynomials."""
    _require_type_a(problem)
    _require_special(problem)
    if any(p.is_zero() for p in polys):
        raise ValueError("Miura d-opers need non-zero polynomials")
    h = problem.h
    return torus_product(polys, -1, h) @ _v_bar(problem, polys) @ torus_product(polys, 1)


@dataclass(frozen=True)
class DOper:
    problem: BetheProblem
    tuple: PolyTuple
    V: MatrixRF

    def to_json(self) -> dict:
        return {"tuple": self.tuple.to_json(), "V": self.V.to_json()}


def build_V(problem: BetheProblem, y: PolyTuple | Sequence[RatPoly]) -> DOper:
    polys = y.polys if isinstance(y, PolyTuple) else tuple(y)
    V = v_matrix(problem, polys)
    if V.det() != RF.one():
        raise InvariantError("det V != 1")
    return DOper(problem, PolyTuple(polys), V)


def gauge_function(problem: BetheProblem, polys: Sequence[RatPoly], ytilde: RatPoly, i: int) -> RF:
    """``g_i = prod_{m != i} y_m^{-a_im} / (y_i * ytilde)``."""
    num = RatPoly.one()
    for m in range(1, problem.rank + 1):
        e = -problem.cartan.a(i, m)
        if m != i and e:
            num = num * polys[m - 1] ** e
    return RF(num, polys[i - 1] * ytilde)


@dataclass(frozen=True)
class Deformation:
    direction: int
    g: RF
    ytilde: RatPoly
    source: DOper
    target: DOper
    gauge_identity: bool
    riccati: bool
    riccati_factorization: bool

    def to_json(self) -> dict:
        return {
            "direction": self.direction,
            "g": self.g.to_json(),
            "ytilde": self.ytilde.to_json(),
            "target_tuple": self.target.tuple.to_json(),
            "V_target": self.target.V.to_json(),
            "gauge_identity": self.gauge_identity,
            "riccati": self.riccati,
            "riccati_factorization": self.riccati_factorization,
        }


def deform(problem: BetheProblem, y: PolyTuple, i: int, ytilde: RatPoly | None = None) -> Deformation:
    """Deform D_y in direction i and verify the gauge and Riccati identities.

    ``ytilde`` defaults to the normalized Wronskian solution; any other
    solution ``ytilde + c*y_i`` may be passed.
    """
    _require_type_a(problem)
    _require_special(problem)
    h = problem.h
    polys = y.polys
    if ytilde is None:
        ytilde = is_fertile(problem, y, i)
        if ytilde is None:
            raise NotFertileError(i)
    elif not _solves(problem, polys, i, ytilde):
        raise NotFertileError(i, "supplied polynomial does not solve the Wronskian equation")
    es, _, _ = chevalley_matrices(problem.rank)
    source = build_V(problem, y)
    new_polys = list(polys)
    new_polys[i - 1] = ytilde
    target_V = v_matrix(problem, new_polys)
    g = gauge_function(problem, polys, ytilde, i)
    lhs = exp_times(g.shift(h), es[i - 1]) @ source.V @ exp_times(-g, es[i - 1])
    gauge_ok = lhs == target_V
    yi = polys[i - 1]
    gt = RF(yi, ytilde)
    R = R_function(problem, polys, i)
    riccati_ok = gt.shift(h) == gt / (1 - gt * R)
    factor_ok = (1 - gt * R) == RF(ytilde.shift(h), yi.shift(h)) * RF(yi, ytilde)
    if not (gauge_ok and riccati_ok and factor_ok):
        raise InvariantError(
            f"deformation identities failed in direction {i}: gauge={gauge_ok} "
            f"riccati={riccati_ok} factorization={factor_ok}"
        )
    target = DOper(problem, PolyTuple(new_polys), target_V)
    return Deformation(i, g, ytilde, source, target, gauge_ok, riccati_ok, factor_ok)


def _solves(problem: BetheProblem, polys: Sequence[RatPoly], i: int, ytilde: RatPoly) -> bool:
    from .ratpoly import discrete_wronskian

    rhs = build_T(problem, i) * neighbor_product(problem, polys, i)
    return discrete_wronskian(polys[i - 1], ytilde, problem.h) == rhs


def verify_solution(V: MatrixRF, Y: MatrixRF, h: Scalar) -> bool:
    """True iff ``Y(x+h) = V(x) Y(x)`` identically."""
    if V.shape[1] != Y.shape[0]:
        raise ValueError(f"shape mismatch {V.shape} and {Y.shape}")
    return (Y.shift(h) - V @ Y).is_zero()


def nested_bracket(fs: Sequence[ConstMatrix], i: int, j: int) -> ConstMatrix:
    """``[F_j, [F_{j-1}, ... [F_{i+1}, F_i] ...]]`` (1-based, j >= i)."""
    m = fs[i - 1]
    for k in range(i + 1, j + 1):
        m = bracket(fs[k - 1], m)
    return m


@dataclass(frozen=True)
class FundamentalSolution:
    Y_bar: MatrixRF
    Y: MatrixRF
    factors: tuple[MatrixRF, ...]
    diagonals: tuple[DiagonalSequence, ...]
    factors_commute: bool
    verified_bar: bool
    verified: bool
    det_one: bool

    def to_json(self) -> dict:
        return {
            "Y_bar": self.Y_bar.to_json(),
            "Y": self.Y.to_json(),
            "diagonals": [[p.to_json() for p in d.diagonal] for d in self.diagonals],
            "factors_commute": self.factors_commute,
            "verified_bar": self.verified_bar,
            "verified": self.verified,
            "det_one": self.det_one,
        }


def fundamental_solution_A(problem: BetheProblem, y: PolyTuple) -> FundamentalSolution:
    """Rational SL(r+1)-valued solution of ``Y(x+h) = V_y(x) Y(x)`` for a Bethe tuple."""
    _require_type_a(problem)
    _require_special(problem)
    r = problem.rank
    n = r + 1
    h = problem.h
    _, fs, _ = chevalley_matrices(r)
    diagonals = []
    factors = []
    commute = True
    for i in range(1, r + 1):
        try:
            diag = diagonal_sequence(problem, y, range(i, r + 1))
        except NotFertileError as exc:
            raise ValueError(f"missing diagonal sequence for indices {i}..{r}: {exc}") from exc
        diagonals.append(diag)
        gens = [nested_bracket(fs, i, j) for j in range(i, r + 1)]
        for a in range(len(gens)):
            for b in range(a + 1, len(gens)):
                if any(v != 0 for row in bracket(gens[a], gens[b]) for v in row):
                    commute = False
        Yi = MatrixRF.identity(n)
        for j, gen in zip(range(i, r + 1), gens):
            # diagonal entries solve y(x+h)u(x) - y(x)u(x+h) = rhs; each step flips the sign
            sign = -1 if (j - i) % 2 == 0 else 1
            Yi = Yi @ exp_times(RF(diag.diagonal[j - i], y[j]) * sign, gen)
        factors.append(Yi)
    Y_bar = MatrixRF.identity(n)
    for f in factors:
        Y_bar = Y_bar @ f
    Y = torus_product(y.polys, -1) @ Y_bar
    ok_bar = verify_solution(_v_bar(problem, y.polys), Y_bar, h)
    ok = verify_solution(build_V(problem, y).V, Y, h)
    det_one = Y.det() == RF.one()
    if not (commute and ok_bar and ok and det_one):
        raise InvariantError(
            f"fundamental solution checks failed: commute={commute} bar={ok_bar} full={ok} det={det_one}"
        )
    return FundamentalSolution(Y_bar, Y, tuple(factors), tuple(diagonals), commute, ok_bar, ok, det_one)


@dataclass(frozen=True)
class SolutionVector:
    word: tuple[int, ...]
    Y: MatrixRF
    verified: bool

    def to_json(self) -> dict:
        return {"word": list(self.word), "Y": [row[0].to_json() for row in self.Y.rows], "verified": self.verified}


def general_solution_vector(problem: BetheProblem, y: PolyTuple, word: Sequence[int],
                            diag: DiagonalSequence | None = None) -> SolutionVector:
    """Vector solution in the defining representation built from a diagonal sequence.

    The lowest weight vector is the last standard basis vector.
    """
    _require_type_a(problem)
    _require_special(problem)
    word = tuple(word)
    if diag is None:
        diag = diagonal_sequence(problem, y, word)
    if tuple(diag.word.letters) != word:
        raise ValueError(f"diagonal sequence is for word {diag.word}, not {word}")
    if tuple(p.monic() for p in diag.tuples[0]) != y.polys or not diag.check(problem):
        raise ValueError("diagonal sequence is inconsistent with the tuple")
    r = problem.rank
    n = r + 1
    es, _, _ = chevalley_matrices(r)
    vec = MatrixRF.column([RF.zero()] * r + [RF.one()])
    vec = torus_product(diag.tuples[-1], -1) @ vec
    for d in range(len(word) - 1, -1, -1):
        i = word[d]
        g = gauge_function(problem, diag.tuples[d], diag.tuples[d + 1][i - 1], i)
        vec = exp_times(-g, es[i - 1]) @ vec
    ok = verify_solution(build_V(problem, y).V, vec, problem.h)
    if not ok:
        raise InvariantError(f"solution vector for word {word} fails the difference equation")
    assert vec.shape == (n, 1)
    return SolutionVector(word, vec, ok)
