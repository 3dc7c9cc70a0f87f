"""Cartan data, integral weights and word-driven Weyl group actions.

Weights live in coroot coordinates ``<lam, alpha_i^vee>``. The simple root
``alpha_j`` has coordinates given by column ``j`` of the Cartan matrix, since
``<alpha_j, alpha_i^vee> = a_ij``. Weyl words act right to left.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from typing import Iterable, Sequence

FAMILIES = ("A", "B", "C", "D", "E", "F", "G")


class CartanError(ValueError):
    """Invalid Cartan data or an unsupported (family, rank) pair."""


@dataclass(frozen=True)
class CartanData:
    matrix: tuple[tuple[int, ...], ...]
    symmetrizer: tuple[int, ...]
    family: str | None = None

    def __post_init__(self) -> None:
        r = len(self.matrix)
        if r == 0:
            raise CartanError("rank must be positive")
        if any(len(row) != r for row in self.matrix):
            raise CartanError("Cartan matrix must be square")
        if len(self.symmetrizer) != r or any(d <= 0 for d in self.symmetrizer):
            raise CartanError("symmetrizer must be r positive integers")
        a = self.matrix
        for i in range(r):
            if a[i][i] != 2:
                raise CartanError(f"diagonal entry a[{i + 1}][{i + 1}] must be 2")
            for j in range(r):
                if i == j:
                    continue
                if a[i][j] > 0:
                    raise CartanError(f"off-diagonal entry a[{i + 1}][{j + 1}] is positive")
                if (a[i][j] == 0) != (a[j][i] == 0):
                    raise CartanError(f"a[{i + 1}][{j + 1}] and a[{j + 1}][{i + 1}] must vanish together")
                if self.symmetrizer[i] * a[i][j] != self.symmetrizer[j] * a[j][i]:
                    raise CartanError("diag(d) * A is not symmetric")

    @property
    def rank(self) -> int:
        return len(self.matrix)

    @property
    def label(self) -> str:
        return f"{self.family}{self.rank}" if self.family else f"custom{self.rank}"

    def a(self, i: int, j: int) -> int:
        """Entry ``a_{i,j}`` with 1-based indices."""
        return self.matrix[i - 1][j - 1]

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int]], family: str | None = None) -> "CartanData":
        """Build Cartan data from a symmetrizable generalized Cartan matrix."""
        m = tuple(tuple(int(v) for v in row) for row in matrix)
        return cls(m, find_symmetrizer(m), family)

    @cached_property
    def inverse(self) -> tuple[tuple[Fraction, ...], ...]:
        """Exact inverse of the Cartan matrix (finite type only)."""
        r = self.rank
        aug = [[Fraction(v) for v in row] + [Fraction(int(i == k)) for k in range(r)]
               for i, row in enumerate(self.matrix)]
        for c in range(r):
            pivot = next((k for k in range(c, r) if aug[k][c] != 0), None)
            if pivot is None:
                raise CartanError(f"Cartan matrix of {self.label} is singular")
            aug[c], aug[pivot] = aug[pivot], aug[c]
            pv = aug[c][c]
            aug[c] = [v / pv for v in aug[c]]
            for k in range(r):
                if k != c and aug[k][c] != 0:
                    f = aug[k][c]
                    aug[k] = [x - f * y for x, y in zip(aug[k], aug[c])]
        return tuple(tuple(row[r:]) for row in aug)

    def neighbors(self, i: int) -> list[int]:
        return [j for j in range(1, self.rank + 1) if j != i and self.a(i, j) != 0]

    def is_tree(self) -> bool:
        """True when the Dynkin diagram is connected and acyclic."""
        r = self.rank
        edges = sum(len(self.neighbors(i)) for i in range(1, r + 1)) // 2
        if edges != r - 1:
            return False
        seen = {1}
        todo = deque([1])
        while todo:
            v = todo.popleft()
            for u in self.neighbors(v):
                if u not in seen:
                    seen.add(u)
                    todo.append(u)
        return len(seen) == r


def find_symmetrizer(matrix: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Smallest positive integer vector d with diag(d)*A symmetric."""
    r = len(matrix)
    ratio: list[Fraction | None] = [None] * r
    for start in range(r):
        if ratio[start] is not None:
            continue
        ratio[start] = Fraction(1)
        todo = [start]
        while todo:
            i = todo.pop()
            for j in range(r):
                if j == i or matrix[i][j] == 0:
                    continue
                if matrix[j][i] == 0:
                    raise CartanError(f"a[{i + 1}][{j + 1}] and a[{j + 1}][{i + 1}] must vanish together")
                # d_i a_ij = d_j a_ji
                dj = ratio[i] * matrix[i][j] / matrix[j][i]
                if ratio[j] is None:
                    ratio[j] = dj
                    todo.append(j)
                elif ratio[j] != dj:
                    raise CartanError("matrix is not symmetrizable")
    den = reduce(lambda acc, q: acc * q.denominator // math.gcd(acc, q.denominator), ratio, 1)
    ints = [int(q * den) for q in ratio]
    g = reduce(math.gcd, ints)
    return tuple(v // g for v in ints)


def _dynkin_edges(family: str, rank: int) -> tuple[list[tuple[int, int]], list[int]]:
    """Edges (1-based, Bourbaki numbering) and root-length symmetrizers."""
    chain = [(i, i + 1) for i in range(1, rank)]
    if family == "A" and rank >= 1:
        return chain, [1] * rank
    if family == "B" and rank >= 2:
        return chain, [2] * (rank - 1) + [1]
    if family == "C" and rank >= 2:
        return chain, [1] * (rank - 1) + [2]
    if family == "D" and rank >= 4:
        edges = [(i, i + 1) for i in range(1, rank - 1)] + [(rank - 2, rank)]
        return edges, [1] * rank
    if family == "E" and rank in (6, 7, 8):
        edges = [(1, 3), (2, 4), (3, 4)] + [(i, i + 1) for i in range(4, rank)]
        return edges, [1] * rank
    if family == "F" and rank == 4:
        return chain, [2, 2, 1, 1]
    if family == "G" and rank == 2:
        return chain, [1, 3]
    raise CartanError(f"no finite-type Cartan matrix {family}{rank}")


def cartan_matrix(family: str, rank: int) -> CartanData:
    family = family.upper()
    if family not in FAMILIES:
        raise CartanError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    if not isinstance(rank, int) or rank < 1:
        raise CartanError(f"rank must be a positive integer, got {rank!r}")
    edges, d = _dynkin_edges(family, rank)
    a = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for i, j in edges:
        b = -max(d[i - 1], d[j - 1])
        a[i - 1][j - 1] = b // d[i - 1]
        a[j - 1][i - 1] = b // d[j - 1]
    return CartanData(tuple(map(tuple, a)), tuple(d), family)


_DUAL_FAMILY = {"B": "C", "C": "B"}


def langlands_dual(cartan: CartanData) -> CartanData:
    t = tuple(zip(*cartan.matrix))
    fam = _DUAL_FAMILY.get(cartan.family, cartan.family) if cartan.family else None
    return CartanData(t, find_symmetrizer(t), fam)


@dataclass(frozen=True)
class Weight:
    """Integral weight in coroot coordinates."""

    coords: tuple[int, ...]

    def __init__(self, coords: Iterable[int]):
        object.__setattr__(self, "coords", tuple(int(c) for c in coords))

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(a - b for a, b in zip(self.coords, other.coords))

    def __mul__(self, k: int) -> "Weight":
        return Weight(k * a for a in self.coords)

    __rmul__ = __mul__

    def is_dominant(self) -> bool:
        return all(c >= 0 for c in self.coords)

    def __getitem__(self, i: int) -> int:
        return self.coords[i]

    def __len__(self) -> int:
        return len(self.coords)

    @classmethod
    def zero(cls, rank: int) -> "Weight":
        return cls([0] * rank)

    @classmethod
    def fundamental(cls, rank: int, i: int) -> "Weight":
        return cls(int(k == i - 1) for k in range(rank))

    @classmethod
    def rho(cls, rank: int) -> "Weight":
        return cls([1] * rank)


@dataclass(frozen=True)
class WeylWord:
    letters: tuple[int, ...] = field(default=())

    def __init__(self, letters: Iterable[int] = ()):
        object.__setattr__(self, "letters", tuple(int(v) for v in letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def inverse(self) -> "WeylWord":
        return WeylWord(reversed(self.letters))

    def check(self, rank: int) -> "WeylWord":
        for v in self.letters:
            if not 1 <= v <= rank:
                raise CartanError(f"word letter {v} outside 1..{rank}")
        return self

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.letters)) + ")"


def simple_root(cartan: CartanData, j: int) -> Weight:
    return Weight(cartan.a(i, j) for i in range(1, cartan.rank + 1))


def reflect(cartan: CartanData, i: int, lam: Weight) -> Weight:
    """``s_i(lam) = lam - <lam, alpha_i^vee> alpha_i``."""
    return lam - simple_root(cartan, i) * lam[i - 1]


def weyl_action(cartan: CartanData, word: WeylWord | Sequence[int], lam: Weight) -> Weight:
    for i in reversed(tuple(word)):
        lam = reflect(cartan, i, lam)
    return lam


def shifted_action(cartan: CartanData, word: WeylWord | Sequence[int], lam: Weight) -> Weight:
    """``w . lam = w(lam + rho) - rho`` with letters applied right to left."""
    word = WeylWord(word).check(cartan.rank)
    rho = Weight.rho(cartan.rank)
    return weyl_action(cartan, word, lam + rho) - rho


def root_coordinates(cartan: CartanData, lam: Weight) -> tuple[Fraction, ...]:
    """Coefficients ``c`` with ``lam = sum_j c_j alpha_j``."""
    inv = cartan.inverse
    return tuple(sum((inv[j][k] * lam[k] for k in range(cartan.rank)), Fraction(0))
                 for j in range(cartan.rank))


def root_combination(cartan: CartanData, coefficients: Sequence[int]) -> Weight:
    total = Weight.zero(cartan.rank)
    for j, c in enumerate(coefficients, start=1):
        if c:
            total = total + simple_root(cartan, j) * c
    return total


def total_weight(cartan: CartanData, weights: Sequence[Weight]) -> Weight:
    total = Weight.zero(cartan.rank)
    for w in weights:
        total = total + w
    return total


def infinity_weight(problem, degrees: Sequence[int]) -> Weight:
    """``sum_s Lambda_s - sum_j l_j alpha_j`` in coroot coordinates."""
    cartan = problem.cartan
    if len(degrees) != cartan.rank:
        raise ValueError(f"need {cartan.rank} degrees, got {len(degrees)}")
    if any(l < 0 for l in degrees):
        raise ValueError("degrees must be non-negative")
    return total_weight(cartan, problem.weights) - root_combination(cartan, degrees)


def degrees_for(problem, base_degrees: Sequence[int], word: WeylWord | Sequence[int]) -> tuple[int, ...]:
    """Degree vector ``l^w`` with ``sum_s Lambda_s - w . Lambda_inf = sum_i l^w_i alpha_i``."""
    cartan = problem.cartan
    lam_inf = infinity_weight(problem, base_degrees)
    moved = shifted_action(cartan, word, lam_inf)
    coeffs = root_coordinates(cartan, total_weight(cartan, problem.weights) - moved)
    if any(c.denominator != 1 for c in coeffs):
        raise ArithmeticError(f"non-integral root coordinates {coeffs}; input weights are inconsistent")
    return tuple(int(c) for c in coeffs)
