"""Exact rational scalars and univariate polynomials over the rationals.

Scalars are :class:`fractions.Fraction`; :class:`RatPoly` stores an ascending
tuple of fractions with no trailing zeros (the zero polynomial is ``()``).
The module also hosts the discrete Wronskian and its exact inverse, the
linear solve that decides whether a tuple is fertile in a direction.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction]


def to_rational(value: object) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` string into a Fraction.

    Floats are rejected: they would silently smuggle rounding into exact
    computations.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational string")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational number: {value!r}") from exc
    raise TypeError(f"cannot interpret {type(value).__name__} {value!r} as an exact rational")


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class RatPoly:
    """Univariate polynomial with exact rational coefficients (ascending order)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[object] = ()):
        cs = [to_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def _raw(cls, cs: list[Fraction]) -> "RatPoly":
        # trusted constructor: cs already Fractions
        while cs and cs[-1] == 0:
            cs.pop()
        p = cls.__new__(cls)
        p.coeffs = tuple(cs)
        return p

    @classmethod
    def x(cls) -> "RatPoly":
        return cls._raw([Fraction(0), Fraction(1)])

    @classmethod
    def constant(cls, c: object) -> "RatPoly":
        return cls([c])

    @classmethod
    def one(cls) -> "RatPoly":
        return cls._raw([Fraction(1)])

    @classmethod
    def zero(cls) -> "RatPoly":
        return cls._raw([])

    @classmethod
    def monomial(cls, k: int, c: object = 1) -> "RatPoly":
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots: Iterable[object]) -> "RatPoly":
        p = cls.one()
        for t in roots:
            p = p * cls._raw([-to_rational(t), Fraction(1)])
        return p

    # -- basic properties -------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lc(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def monic(self) -> "RatPoly":
        if not self.coeffs:
            raise ValueError("the zero polynomial has no monic form")
        lead = self.coeffs[-1]
        if lead == 1:
            return self
        return RatPoly._raw([c / lead for c in self.coeffs])

    # -- ring operations --------------------------------------------------

    def _coerce(self, other: object) -> "RatPoly | None":
        if isinstance(other, RatPoly):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return RatPoly._raw([Fraction(other)])
        return None

    def __eq__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other: object) -> "RatPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        cs = list(a)
        for k, c in enumerate(b):
            cs[k] += c
        return RatPoly._raw(cs)

    __radd__ = __add__

    def __neg__(self) -> "RatPoly":
        return RatPoly._raw([-c for c in self.coeffs])

    def __sub__(self, other: object) -> "RatPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> "RatPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: object) -> "RatPoly":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, RatPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return RatPoly.zero()
        cs = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                cs[i + j] += ai * bj
        return RatPoly._raw(cs)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "RatPoly":
        c = to_rational(c)
        if c == 0:
            return RatPoly.zero()
        return RatPoly._raw([c * a for a in self.coeffs])

    def __truediv__(self, c: Scalar) -> "RatPoly":
        c = to_rational(c)
        if c == 0:
            raise ZeroDivisionError("polynomial divided by zero scalar")
        return RatPoly._raw([a / c for a in self.coeffs])

    def __pow__(self, n: int) -> "RatPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result = RatPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __divmod__(self, other: "RatPoly") -> tuple["RatPoly", "RatPoly"]:
        if not isinstance(other, RatPoly):
            other = RatPoly([other])
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        lead = other.coeffs[-1]
        if len(rem) - 1 < db:
            return RatPoly.zero(), self
        quot = [Fraction(0)] * (len(rem) - db)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            q = c / lead
            quot[k - db] = q
            for j, bj in enumerate(other.coeffs):
                rem[k - db + j] -= q * bj
        return RatPoly._raw(quot), RatPoly._raw(rem[:db])

    def __floordiv__(self, other: "RatPoly") -> "RatPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "RatPoly") -> "RatPoly":
        return divmod(self, other)[1]

    def exact_div(self, other: "RatPoly") -> "RatPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    # -- calculus and substitution ----------------------------------------

    def __call__(self, t: Scalar) -> Fraction:
        return self.evaluate(t)

    def evaluate(self, t: Scalar) -> Fraction:
        t = to_rational(t)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def derivative(self) -> "RatPoly":
        return RatPoly._raw([k * c for k, c in enumerate(self.coeffs)][1:])

    def shift(self, a: Scalar) -> "RatPoly":
        """Return ``p(x + a)``."""
        a = to_rational(a)
        if a == 0 or len(self.coeffs) <= 1:
            return self
        # Horner re-centering
        cs: list[Fraction] = []
        for c in reversed(self.coeffs):
            nxt = [Fraction(0)] * (len(cs) + 1)
            for k, v in enumerate(cs):
                nxt[k + 1] += v
                nxt[k] += a * v
            nxt[0] += c
            cs = nxt
        return RatPoly._raw(cs)

    # -- presentation -----------------------------------------------------

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[object]) -> "RatPoly":
        return cls(to_rational(c) for c in data)

    def __repr__(self) -> str:
        return f"RatPoly({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = format_rational(mag)
            else:
                mono = "x" if k == 1 else f"x^{k}"
                body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


X = RatPoly.x()


def gcd(p: RatPoly, q: RatPoly) -> RatPoly:
    """Monic greatest common divisor over the rationals."""
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    a, b = p, q
    while not b.is_zero():
        a, b = b, a % b
        if not b.is_zero():
            # keep coefficient growth in check
            b = b.monic()
    return a.monic()


def squarefree(p: RatPoly) -> bool:
    if p.is_zero():
        raise ValueError("squarefree() of the zero polynomial")
    if p.degree <= 0:
        return True
    return gcd(p, p.derivative()).degree == 0


def coprime(p: RatPoly, q: RatPoly) -> bool:
    if p.is_zero() and q.is_zero():
        raise ValueError("coprime() of two zero polynomials")
    return gcd(p, q).degree == 0


def discrete_wronskian(y: RatPoly, u: RatPoly, h: Scalar) -> RatPoly:
    """``y(x+h) u(x) - y(x) u(x+h)``."""
    h = to_rational(h)
    if h == 0:
        raise ValueError("the step h must be non-zero")
    return y.shift(h) * u - y * u.shift(h)


def solve_linear(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction] | None:
    """Solve ``rows @ v = rhs`` exactly by Gauss-Jordan elimination.

    Returns one solution (free variables set to zero) or ``None`` when the
    system is inconsistent.
    """
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    aug = [list(map(Fraction, row)) + [Fraction(b)] for row, b in zip(rows, rhs)]
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        pivot = next((k for k in range(r, n_rows) if aug[k][c] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        pv = aug[r][c]
        if pv != 1:
            aug[r] = [v / pv for v in aug[r]]
        for k in range(n_rows):
            if k != r and aug[k][c] != 0:
                f = aug[k][c]
                row_r = aug[r]
                aug[k] = [a - f * b for a, b in zip(aug[k], row_r)]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    for k in range(r, n_rows):
        if aug[k][-1] != 0:
            return None
    sol = [Fraction(0)] * n_cols
    for k, c in enumerate(pivots):
        sol[c] = aug[k][-1]
    return sol


def wronskian_degree_bound(y: RatPoly, q: RatPoly) -> int:
    return max(y.degree, q.degree + 1 - y.degree)


def solve_wronskian(y: RatPoly, q: RatPoly, h: Scalar, normalize_at: int) -> RatPoly | None:
    """Find a polynomial ``u`` with ``discrete_wronskian(y, u, h) == q``.

    All solutions form the line ``u + c*y``; the returned one has a zero
    coefficient at ``x**normalize_at``. ``None`` means no polynomial solution
    exists.
    """
    h = to_rational(h)
    if y.is_zero():
        raise ValueError("solve_wronskian needs a non-zero polynomial y")
    if h == 0:
        raise ValueError("the step h must be non-zero")
    if y.coeff(normalize_at) == 0:
        raise ValueError(f"y has no x^{normalize_at} term; normalization would not pin a unique solution")
    bound = wronskian_degree_bound(y, q)
    if normalize_at == y.degree:
        return _solve_wronskian_triangular(y, q, h, bound)
    columns = [discrete_wronskian(y, RatPoly.monomial(k), h) for k in range(bound + 1)]
    n_eq = max([c.degree for c in columns] + [q.degree]) + 1
    rows = [[col.coeff(e) for col in columns] for e in range(n_eq)]
    rhs = [q.coeff(e) for e in range(n_eq)]
    pin = [Fraction(0)] * (bound + 1)
    pin[normalize_at] = Fraction(1)
    rows.append(pin)
    rhs.append(Fraction(0))
    sol = solve_linear(rows, rhs)
    if sol is None:
        return None
    return RatPoly._raw(sol)


def _solve_wronskian_triangular(y: RatPoly, q: RatPoly, h: Fraction, bound: int) -> RatPoly | None:
    """Back-substitution for the pin at ``x**deg(y)``.

    ``W(y, x**k)`` has degree ``m+k-1`` with leading coefficient
    ``h*(m-k)*lc(y)`` (``m = deg y``), so the system is triangular once the
    ``x**m`` coefficient of the solution is fixed to zero.
    """
    m = y.degree
    lc = y.lc
    ys = y.shift(h)
    step = RatPoly._raw([h, Fraction(1)])
    powers = [RatPoly.one()]
    for _ in range(bound):
        powers.append(powers[-1] * step)
    residual = list(q.coeffs) + [Fraction(0)] * max(0, m + bound + 1 - len(q.coeffs))
    sol = [Fraction(0)] * (bound + 1)
    for k in range(bound, -1, -1):
        if k == m:
            continue
        top = m + k - 1
        if top < 0:
            continue
        uk = residual[top] / (h * (m - k) * lc)
        if uk == 0:
            continue
        sol[k] = uk
        # subtract uk * (ys * x^k - y * (x+h)^k)
        for e, c in enumerate(ys.coeffs):
            residual[e + k] -= uk * c
        for e, c in enumerate((y * powers[k]).coeffs):
            residual[e] += uk * c
    if any(residual):
        return None
    return RatPoly._raw(sol)


def integer_primitive(p: RatPoly) -> list[int]:
    """Integer coefficients of a primitive scalar multiple of ``p``."""
    den = 1
    for c in p.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    return [v // g for v in ints] if g else ints


def _eval_mod(cs: Sequence[int], t: int, m: int) -> int:
    acc = 0
    for c in reversed(cs):
        acc = (acc * t + c) % m
    return acc


def _eval_int(cs: Sequence[int], t: int) -> int:
    acc = 0
    for c in reversed(cs):
        acc = acc * t + c
    return acc


def _primes(start: int) -> Iterator[int]:
    n = start
    while True:
        if n > 1 and all(n % d for d in range(2, math.isqrt(n) + 1)):
            yield n
        n += 1


def _integer_roots_monic(g: Sequence[int]) -> list[int]:
    """Integer roots of a monic squarefree integer polynomial (ascending coefficients).

    Roots are found modulo a prime at which every root is simple, Hensel
    lifted beyond the Cauchy bound, and confirmed by exact evaluation.
    """
    bound = 1 + max((abs(c) for c in g[:-1]), default=0)
    dg = [k * c for k, c in enumerate(g)][1:]
    for p in _primes(max(31, 2 * len(g))):
        mod_roots = [r for r in range(p) if _eval_mod(g, r, p) == 0]
        if any(_eval_mod(dg, r, p) == 0 for r in mod_roots):
            continue
        out = []
        for r in mod_roots:
            m = p
            while m <= 2 * bound:
                m = m * m
                r = (r - _eval_mod(g, r, m) * pow(_eval_mod(dg, r, m), -1, m)) % m
            cand = r if r <= m // 2 else r - m
            if abs(cand) <= bound and _eval_int(g, cand) == 0:
                out.append(cand)
        return out
    raise AssertionError("unreachable: only finitely many primes divide the discriminant")


def rational_roots(p: RatPoly) -> list[Fraction]:
    """Distinct rational roots of ``p``, sorted."""
    if p.is_zero():
        raise ValueError("the zero polynomial has every number as a root")
    if p.degree <= 0:
        return []
    sf = p.exact_div(gcd(p, p.derivative())) if p.degree > 1 else p
    a = integer_primitive(sf)
    n = len(a) - 1
    lc = a[-1]
    # g(y) = lc^(n-1) * sf(y / lc) is monic with integer coefficients
    g = [a[k] * lc ** (n - 1 - k) for k in range(n)] + [1]
    return sorted(Fraction(r, lc) for r in _integer_roots_monic(g))


def splits_over_q(p: RatPoly) -> bool:
    """True when ``p`` is a product of linear factors over the rationals."""
    if p.is_zero():
        raise ValueError("splits_over_q() of the zero polynomial")
    if p.degree <= 0:
        return True
    # every root of p is a root of its squarefree part
    sf = p.exact_div(gcd(p, p.derivative()))
    return len(rational_roots(sf)) == sf.degree
