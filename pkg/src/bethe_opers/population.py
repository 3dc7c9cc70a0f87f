"""Reproduction procedures, diagonal sequences and cell exploration.

Two word conventions meet here. Reproduction sequences (``reproduce_word``,
``diagonal_sequence``) apply directions left to right. Cells are labelled by
Weyl words acting right to left, so the cell of ``s_{i_k} ... s_{i_1}`` is
reached by the reproduction sequence ``(i_1, ..., i_k)``.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .bethe import (
    BetheProblem,
    NotFertileError,
    PolyTuple,
    build_T,
    is_bethe,
    is_fertile,
    is_generic,
    neighbor_product,
    weight_at_infinity,
)
from .liealg import WeylWord, degrees_for, shifted_action
from .ratpoly import RatPoly, discrete_wronskian, format_rational, solve_wronskian, to_rational

log = logging.getLogger(__name__)

Param = Fraction | None  # None is the point at infinity of P^1


class InvariantError(AssertionError):
    """A proven identity failed; signals a bug or inconsistent input."""


def parse_param(value: object) -> Param:
    if value is None:
        return None
    if isinstance(value, str) and value.strip().lower() in ("inf", "infinity", "oo", "∞"):
        return None
    return to_rational(value)


def format_param(c: Param) -> str:
    return "inf" if c is None else format_rational(c)


@dataclass(frozen=True)
class ReproductionFamily:
    base: PolyTuple
    direction: int
    ytilde: RatPoly

    def member(self, c: Param) -> PolyTuple:
        """Tuple with entry ``i`` replaced by ``ytilde + c*y_i``; ``None`` gives the base."""
        if c is None:
            return self.base
        yi = self.base[self.direction]
        return self.base.replace(self.direction, self.ytilde + yi.scale(c))


def reproduction_family(problem: BetheProblem, y: PolyTuple, i: int) -> ReproductionFamily:
    yt = is_fertile(problem, y, i)
    if yt is None:
        raise NotFertileError(i)
    return ReproductionFamily(y, i, yt)


def _check_degree_law(problem: BetheProblem, old: PolyTuple, new: PolyTuple, i: int) -> bool:
    """Raise unless a degree change in direction i moves the weight by ``s_i .``"""
    if old.degrees == new.degrees:
        return False
    expected = shifted_action(problem.cartan, (i,), weight_at_infinity(problem, old))
    got = weight_at_infinity(problem, new)
    if got != expected:
        raise InvariantError(
            f"degree law failed in direction {i}: {old.degrees} -> {new.degrees}, "
            f"weight {got.coords} != s_{i}.{weight_at_infinity(problem, old).coords} = {expected.coords}"
        )
    return True


def simple_reproduce(problem: BetheProblem, y: PolyTuple, i: int, c: Param) -> PolyTuple:
    out = reproduction_family(problem, y, i).member(c)
    _check_degree_law(problem, y, out, i)
    return out


@dataclass(frozen=True)
class ReproductionStep:
    direction: int
    param: Param
    tuple: PolyTuple
    generic: bool
    degree_changed: bool


@dataclass(frozen=True)
class WordReproduction:
    start: PolyTuple
    steps: tuple[ReproductionStep, ...]

    @property
    def result(self) -> PolyTuple:
        return self.steps[-1].tuple if self.steps else self.start

    @property
    def all_generic(self) -> bool:
        return all(s.generic for s in self.steps)

    def flagged_steps(self) -> list[int]:
        return [d for d, s in enumerate(self.steps, start=1) if not s.generic]


def reproduce_word(problem: BetheProblem, y: PolyTuple, word: Sequence[int], params: Sequence[object]) -> WordReproduction:
    """Fold :func:`simple_reproduce` along ``word`` (left to right).

    Non-generic intermediate tuples do not stop the fold; they are flagged in
    the returned steps.
    """
    word = WeylWord(word).check(problem.rank)
    cs = [parse_param(c) for c in params]
    if len(cs) != len(word):
        raise ValueError(f"word of length {len(word)} needs {len(word)} parameters, got {len(cs)}")
    steps = []
    cur = y
    for d, (i, c) in enumerate(zip(word, cs), start=1):
        try:
            fam = reproduction_family(problem, cur, i)
        except NotFertileError as exc:
            raise NotFertileError(i, f"reproduction step {d} of word {word}") from exc
        nxt = fam.member(c)
        changed = _check_degree_law(problem, cur, nxt, i)
        steps.append(ReproductionStep(i, c, nxt, is_generic(problem, nxt).generic, changed))
        cur = nxt
    return WordReproduction(y, tuple(steps))


@dataclass(frozen=True)
class DiagonalSequence:
    """Raw (non-monic) solutions along a reproduction sequence.

    ``tuples[k]`` is the raw tuple after ``k`` steps (``tuples[0]`` is the
    start); ``diagonal[k]`` is the entry created at step ``k + 1``.
    """

    word: WeylWord
    tuples: tuple[tuple[RatPoly, ...], ...]
    diagonal: tuple[RatPoly, ...]

    def monic_tuples(self) -> list[PolyTuple]:
        return [PolyTuple(t) for t in self.tuples[1:]]

    def check(self, problem: BetheProblem) -> bool:
        """Re-verify every defining Wronskian relation exactly."""
        if len(self.tuples) != len(self.word) + 1 or len(self.diagonal) != len(self.word):
            return False
        for d, i in enumerate(self.word):
            prev, nxt = self.tuples[d], self.tuples[d + 1]
            if nxt[i - 1] != self.diagonal[d]:
                return False
            if any(prev[m] != nxt[m] for m in range(problem.rank) if m != i - 1):
                return False
            rhs = build_T(problem, i) * neighbor_product(problem, prev, i)
            if discrete_wronskian(prev[i - 1], nxt[i - 1], problem.h) != rhs:
                return False
        return True


def diagonal_sequence(problem: BetheProblem, y: PolyTuple, word: Sequence[int]) -> DiagonalSequence:
    word = WeylWord(word).check(problem.rank)
    cur = list(y.polys)
    tuples = [tuple(cur)]
    diag = []
    for d, i in enumerate(word, start=1):
        prev = cur[i - 1]
        rhs = build_T(problem, i) * neighbor_product(problem, cur, i)
        new = solve_wronskian(prev, rhs, problem.h, prev.degree)
        if new is None:
            raise NotFertileError(i, f"diagonal sequence step {d} of word {word}")
        cur = cur.copy()
        cur[i - 1] = new
        tuples.append(tuple(cur))
        diag.append(new)
    return DiagonalSequence(word, tuple(tuples), tuple(diag))


def parameter_sequence() -> Iterator[Fraction]:
    """0, 1, -1, 2, -2, ..."""
    yield Fraction(0)
    for k in itertools.count(1):
        yield Fraction(k)
        yield Fraction(-k)


def parameter_vectors(length: int) -> Iterator[tuple[Fraction, ...]]:
    """Deterministic enumeration of all integer vectors, by growing radius."""
    if length == 0:
        yield ()
        return
    values: list[Fraction] = []
    for v in parameter_sequence():
        values.append(v)
        n = len(values) - 1
        for vec in itertools.product(range(n + 1), repeat=length):
            if n in vec:
                yield tuple(values[k] for k in vec)


@dataclass
class CellRecord:
    word: WeylWord
    sequence: tuple[int, ...]
    predicted_degrees: tuple[int, ...]
    parameter_count: int
    members: list[PolyTuple] = field(default_factory=list)
    parameters: list[tuple[Fraction, ...]] = field(default_factory=list)
    observed_degrees: set[tuple[int, ...]] = field(default_factory=set)
    rejected: int = 0
    independent_parameters: int = 0
    warnings: list[str] = field(default_factory=list)

    @property
    def dimension_witness(self) -> bool:
        """Every parameter moves the member on its own, and samples are distinct."""
        distinct = len(set(self.members)) == len(self.members)
        return distinct and self.independent_parameters == self.parameter_count

    def to_json(self) -> dict:
        return {
            "word": list(self.word.letters),
            "reproduction_sequence": list(self.sequence),
            "predicted_degrees": list(self.predicted_degrees),
            "observed_degrees": sorted(list(d) for d in self.observed_degrees),
            "parameter_count": self.parameter_count,
            "independent_parameters": self.independent_parameters,
            "dimension_witness": self.dimension_witness,
            "rejected_samples": self.rejected,
            "members": [
                {"params": [format_param(c) for c in ps], "tuple": m.to_json()}
                for ps, m in zip(self.parameters, self.members)
            ],
            "warnings": list(self.warnings),
        }


@dataclass
class PopulationReport:
    problem: BetheProblem
    base: PolyTuple
    records: list[CellRecord]

    @property
    def warnings(self) -> list[str]:
        return [w for r in self.records for w in r.warnings]

    def to_json(self) -> dict:
        return {
            "base": self.base.to_json(),
            "base_degrees": list(self.base.degrees),
            "cells": [r.to_json() for r in self.records],
        }


def _count_independent(problem: BetheProblem, base: PolyTuple, seq: Sequence[int],
                       params: tuple[Fraction, ...], result: PolyTuple) -> int:
    count = 0
    for d in range(len(params)):
        moved = list(params)
        moved[d] += 1
        try:
            other = reproduce_word(problem, base, seq, moved).result
        except NotFertileError:
            continue
        if other != result:
            count += 1
    return count


def explore_cells(problem: BetheProblem, base: PolyTuple, words: Sequence[Sequence[int]],
                  samples_per_word: int = 2, max_attempts: int = 64) -> PopulationReport:
    """Sample population members cell by cell and compare degrees with ``degrees_for``.

    ``words`` are Weyl words (right-to-left). Parameter vectors are drawn
    from :func:`parameter_vectors`; draws that produce a non-Bethe member are
    rejected and counted.
    """
    if not is_bethe(problem, base):
        raise ValueError("the base tuple does not represent a Bethe solution")
    if not weight_at_infinity(problem, base).is_dominant():
        raise ValueError(f"base weight at infinity {weight_at_infinity(problem, base).coords} is not dominant")
    records = []
    # an empty word list still reports the base cell
    for w in list(words) or [()]:
        word = WeylWord(w).check(problem.rank)
        seq = tuple(reversed(word.letters))
        predicted = degrees_for(problem, base.degrees, word)
        rec = CellRecord(word, seq, predicted, len(word))
        attempts = 0
        for params in parameter_vectors(len(seq)):
            if len(rec.members) >= samples_per_word:
                break
            if attempts >= max_attempts:
                msg = f"word {word}: only {len(rec.members)} of {samples_per_word} samples after {attempts} draws"
                log.warning(msg)
                rec.warnings.append(msg)
                break
            attempts += 1
            try:
                rep = reproduce_word(problem, base, seq, params)
            except NotFertileError:
                rec.rejected += 1
                continue
            member = rep.result
            if not is_bethe(problem, member):
                rec.rejected += 1
                continue
            if member.degrees != predicted:
                raise InvariantError(
                    f"word {word}: member degrees {member.degrees} differ from predicted {predicted}"
                )
            rec.members.append(member)
            rec.parameters.append(params)
            rec.observed_degrees.add(member.degrees)
            if len(seq) == 0:
                break
        if rec.members:
            rec.independent_parameters = _count_independent(problem, base, seq, rec.parameters[0], rec.members[0])
        records.append(rec)
    return PopulationReport(problem, base, records)
