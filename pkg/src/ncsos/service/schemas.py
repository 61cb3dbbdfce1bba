"""Request and response models for the certification service.

Polynomials travel as strings in the expression grammar, variable
contexts as a comma list of declarations ("X1,X2" self-adjoint, "X'"
an adjoint pair), exact rationals as "p/q" strings, matrices as nested
row lists on input and flat row-major lists on output.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field


class HealthResponse(BaseModel):
    status: str


class CheckSosRequest(BaseModel):
    vars: str
    poly: str
    degree: int | None = None
    accept_tol: float = 1e-7
    converge_tol: float = 1e-10
    max_iters: int = 20000


class SosResultResponse(BaseModel):
    status: Literal["certificate", "not_sos", "inconclusive"]
    gs: list[str] | None = None
    residual: float | None = None
    witness_word: str | None = None
    top_word: str | None = None
    coefficient: str | None = None
    kind: str | None = None
    iterations: int | None = None
    min_eigenvalue: float | None = None


class RandomConjugatorSpec(BaseModel):
    count: int = Field(gt=0)
    max_polys: int = Field(default=3, gt=0)
    max_degree: int = Field(default=3, ge=0)


class RefuteRequest(BaseModel):
    vars: str
    poly: str
    gs: list[str] | None = None
    random: RandomConjugatorSpec | None = None
    seed: int = 0


class RefutationRecord(BaseModel):
    gs: list[str]
    refuted: bool
    witness_word: str | None = None
    top_word: str | None = None
    coefficient: str | None = None
    kind: str | None = None
    error: str | None = None


class RefuteResponse(BaseModel):
    records: list[RefutationRecord]
    total: int
    refuted: int
    all_refuted: bool
    summary: str


class EvalRequest(BaseModel):
    vars: str
    poly: str
    matrices: list[list[list[float]]]


class MatrixResponse(BaseModel):
    n: int
    entries: list[float]


class GramRequest(BaseModel):
    vars: str
    poly: str
    degree: int | None = None


class GramResponse(BaseModel):
    basis: list[str]
    entries: list[float]


class ShiftDemoRequest(BaseModel):
    size: int = 64
    vectors: list[list[str]] | None = None


class ShiftBasisForm(BaseModel):
    k: int
    value: str


class ShiftVectorForm(BaseModel):
    vector: list[str]
    value: str
    closed_form: str


class ShiftDemoResponse(BaseModel):
    size: int
    subdiagonal: list[int]
    basis_forms: list[ShiftBasisForm]
    vector_forms: list[ShiftVectorForm]
    all_nonpositive: bool


class PaperDemoRequest(BaseModel):
    dims: list[int] = Field(default_factory=lambda: [1, 2, 3, 4, 5, 6])
    samples: int = Field(default=50, gt=0)
    seed: int = 0


class StageModel(BaseModel):
    name: str
    passed: bool
    lines: list[str]
    data: dict


class PaperDemoResponse(BaseModel):
    stages: list[StageModel]
    all_passed: bool
    failed_stages: list[str]
    transcript: list[str]


class ErrorResponse(BaseModel):
    error: str
    message: str
    offset: int | None = None
