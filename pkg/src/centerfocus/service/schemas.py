"""Request/response models of the HTTP service.

Systems are accepted either as the inline shorthand ("s(1,2); V; g=1") or as
the JSON object {"signature": [1,2], "coefficients": {...}, "variety": bool};
polynomials travel in the canonical text grammar; rationals are strings like
"-3/4" so exactness survives the wire.
"""

from __future__ import annotations

from typing import Literal, Union

from pydantic import BaseModel, Field

SystemArg = Union[str, dict]


class FocalRequest(BaseModel):
    system: SystemArg
    order: int = Field(1, ge=1)
    convention: Literal["coordinate", "zero_mean"] = "coordinate"
    budget_seconds: float | None = Field(None, gt=0)


class QuantityEntry(BaseModel):
    k: int
    L: str


class FocalResponse(BaseModel):
    signature: str
    convention: str
    quantities: list[QuantityEntry]


class PseudoRequest(BaseModel):
    system: SystemArg
    k: int = Field(1, ge=1)
    mode: Literal["symbolic", "point", "structure"] = "symbolic"
    free: list[str] | None = None
    point: dict[str, str] | None = None
    heavy: bool = False
    budget_seconds: float | None = Field(None, gt=0)


class PseudoSolutionModel(BaseModel):
    k: int
    m: int
    n: int
    numerator: str
    sigma: str
    free_terms: dict[str, str]
    chosen_free: list[str]
    value_at_zero_free: str | None = None


class StructureModel(BaseModel):
    k: int
    m: int
    n: int
    N: int
    types: list[list[int]]


class PseudoResponse(BaseModel):
    signature: str
    mode: str
    solutions: list[PseudoSolutionModel] | None = None
    reports: list[StructureModel] | None = None


class ComitantCheckRequest(BaseModel):
    system: SystemArg
    polynomial: str
    budget_seconds: float | None = Field(None, gt=0)


class ComitantCheckResponse(BaseModel):
    homogeneous: bool
    comitant: bool
    type: list[int] | None = None
    weight: int | None = None
    reason: str = ""
    witness_operator: str = ""
    residual: str | None = None


class HilbertRequest(BaseModel):
    series: SystemArg  # "builtin:S01" or the series JSON object
    krull: bool = True
    expand: int | None = Field(None, ge=0)


class HilbertResponse(BaseModel):
    variables: list[str]
    numerator: str
    denominator: list[list]
    krull: int | None = None
    coefficients: list[int] | None = None


class RhoRequest(BaseModel):
    signature: Union[str, list[int]]


class RhoResponse(BaseModel):
    signature: str
    rho: int
    slot_count: int


class VerifyRequest(BaseModel):
    suite: Literal["paper"] = "paper"
    seed: int = 1
    budget_seconds: float | None = Field(None, gt=0)


class CheckModel(BaseModel):
    name: str
    expected: str
    got: str
    verdict: Literal["pass", "fail", "logged-discrepancy"]


class VerifyResponse(BaseModel):
    command: str
    inputs: dict
    results: dict
    checks: list[CheckModel]
    ok: bool
    elapsed_ms: float
