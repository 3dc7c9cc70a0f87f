"""JSON problem files: parsing, validation and serialization.

Rationals are ``"p/q"`` strings (plain integers are accepted on input);
polynomials are ascending coefficient arrays.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from .bethe import BetheProblem, ParameterSet, PolyTuple
from .liealg import CartanData, Weight, cartan_matrix
from .ratpoly import RatPoly, format_rational, to_rational

RationalText = Union[str, int]
Coeffs = list[RationalText]


class ProblemFileError(ValueError):
    """Unreadable or schema-invalid problem file; the message carries location context."""


def _check_rational(v: Any) -> Any:
    if isinstance(v, float):
        raise ValueError("floats are not accepted; write rationals as \"p/q\" strings")
    to_rational(v)
    return v


class ProblemFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    family: str | None = None
    rank: int | None = Field(default=None, ge=1)
    matrix: list[list[int]] | None = None
    h: RationalText = "1"
    weights: list[list[int]] = Field(default_factory=list)
    z: list[RationalText] = Field(default_factory=list)
    parameters: Union[Literal["special", "ow", "ogievetsky_wiegman"], list[list[Union[RationalText, None]]]] = "special"
    T: list[Coeffs] | None = None
    tuple: list[Coeffs] | None = None
    word: list[int] | None = None
    words: list[list[int]] | None = None
    params: list[RationalText] | None = None
    samples: int | None = Field(default=None, ge=1)

    @field_validator("h", mode="before")
    @classmethod
    def _h(cls, v: Any) -> Any:
        _check_rational(v)
        if to_rational(v) == 0:
            raise ValueError("h must be non-zero")
        return v

    @field_validator("z", "params", mode="before")
    @classmethod
    def _rational_list(cls, v: Any) -> Any:
        if isinstance(v, list):
            for item in v:
                if not (isinstance(item, str) and item.strip().lower() in ("inf", "infinity", "oo")):
                    _check_rational(item)
        return v

    @field_validator("tuple", "T", mode="before")
    @classmethod
    def _poly_list(cls, v: Any) -> Any:
        if isinstance(v, list):
            for row in v:
                if isinstance(row, list):
                    for c in row:
                        _check_rational(c)
        return v

    @field_validator("family")
    @classmethod
    def _family(cls, v: Any) -> Any:
        if v is not None and v.upper() not in "ABCDEFG":
            raise ValueError(f"unknown family {v!r}")
        return v

    def cartan(self) -> CartanData:
        if self.matrix is not None:
            return CartanData.from_matrix(self.matrix, self.family.upper() if self.family else None)
        if self.family is None or self.rank is None:
            raise ProblemFileError("either 'matrix' or both 'family' and 'rank' are required")
        return cartan_matrix(self.family, self.rank)

    def problem(self) -> BetheProblem:
        cartan = self.cartan()
        r = cartan.rank
        h = to_rational(self.h)
        if isinstance(self.parameters, str):
            if self.parameters == "special":
                params = ParameterSet.special(r, h)
            else:
                params = ParameterSet.ogievetsky_wiegman(r, h)
        else:
            table = self.parameters
            if len(table) != r or any(len(row) != r for row in table):
                raise ProblemFileError(f"parameters: explicit table must be {r}x{r}")
            for i in range(r):
                for m in range(r):
                    if i != m and table[i][m] is None:
                        raise ProblemFileError(f"parameters[{i}][{m}]: missing off-diagonal entry")
                    if i != m:
                        _check_rational(table[i][m])
            params = ParameterSet.explicit([[0 if v is None else v for v in row] for row in table])
            if params == ParameterSet.special(r, h):
                params = ParameterSet.special(r, h)
            elif params == ParameterSet.ogievetsky_wiegman(r, h):
                params = ParameterSet.ogievetsky_wiegman(r, h)
        t_polys = None
        if self.T is not None:
            if len(self.T) != r:
                raise ProblemFileError(f"T: expected {r} polynomials")
            t_polys = tuple(RatPoly.from_json(c) for c in self.T)
        return BetheProblem(cartan, h, tuple(Weight(w) for w in self.weights),
                            tuple(to_rational(v) for v in self.z), params, t_polys)

    def poly_tuple(self, rank: int) -> PolyTuple:
        if self.tuple is None:
            return PolyTuple.ones(rank)
        if len(self.tuple) != rank:
            raise ProblemFileError(f"tuple: expected {rank} polynomials, got {len(self.tuple)}")
        return PolyTuple(RatPoly.from_json(c) for c in self.tuple)


def _format_validation(exc: ValidationError, source: str) -> str:
    parts = []
    for err in exc.errors():
        loc = ".".join(str(p) for p in err["loc"]) or "<root>"
        parts.append(f"{source}: field {loc}: {err['msg']}")
    return "\n".join(parts)


def parse_problem_text(text: str, source: str = "<input>") -> ProblemFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemFileError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    try:
        return ProblemFile.model_validate(data)
    except ValidationError as exc:
        raise ProblemFileError(_format_validation(exc, source)) from exc


def load_problem_file(path: str | Path) -> ProblemFile:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ProblemFileError(f"{path}: {exc.strerror}") from exc
    return parse_problem_text(text, str(path))


def load(path: str | Path) -> tuple[ProblemFile, BetheProblem, PolyTuple]:
    pf = load_problem_file(path)
    try:
        problem = pf.problem()
        y = pf.poly_tuple(problem.rank)
    except ProblemFileError:
        raise
    except ValueError as exc:
        raise ProblemFileError(f"{path}: {exc}") from exc
    return pf, problem, y


def problem_to_json(problem: BetheProblem, y: PolyTuple | None = None) -> dict:
    """Serialize back into the problem-file schema (round-trips through :func:`load`)."""
    c = problem.cartan
    out: dict[str, Any] = {
        "h": format_rational(problem.h),
        "weights": [list(w.coords) for w in problem.weights],
        "z": [format_rational(v) for v in problem.z],
    }
    if c.family and c == cartan_matrix(c.family, c.rank):
        out["family"], out["rank"] = c.family, c.rank
    else:
        out["matrix"] = [list(row) for row in c.matrix]
        if c.family:
            out["family"] = c.family
    if problem.params.kind == "special":
        out["parameters"] = "special"
    elif problem.params.kind == "ogievetsky_wiegman":
        out["parameters"] = "ow"
    else:
        out["parameters"] = [[None if v is None else format_rational(v) for v in row]
                             for row in problem.params.table()]
    if problem.t_polys is not None:
        out["T"] = [p.to_json() for p in problem.t_polys]
    if y is not None:
        out["tuple"] = y.to_json()
    return out
