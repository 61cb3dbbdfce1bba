"""HTTP service exposing the certification toolkit.

Endpoints mirror the CLI commands one-to-one; the CLI is a thin client
of this app.  Usage errors (bad grammar, unknown variables, precondition
violations) map to 400 with a structured body; violated internal
contracts (a missing obstruction where one is guaranteed, a failed
C*-identity) map to 409.
"""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..demo import run_paper_demo
from ..freealg import NcPoly, VarContext
from ..gram import canonical_gram, default_basis_degree
from ..ncparse import (
    PolyParseError,
    parse,
    parse_var_context,
    print_canonical,
    rational_str,
    word_str,
)
from ..opeval import (
    BoundaryArtifactError,
    IdentityViolatedError,
    MatTuple,
    evaluate,
    shift_closed_form,
    shift_quadratic_form,
    shift_truncation,
)
from ..soscert import (
    Certificate,
    NotSos,
    Obstruction,
    ObstructionMissingError,
    random_conjugators,
    refute_conjugation,
    sos_decompose,
)
from ..numlin import NonConvergenceError
from . import schemas

app = FastAPI(
    title="ncsos",
    description="Noncommutative polynomial sum-of-squares certification service",
    version="0.1.0",
)


@app.exception_handler(PolyParseError)
async def _parse_error(request: Request, exc: PolyParseError):
    return JSONResponse(
        status_code=400,
        content={"error": "parse_error", "message": str(exc), "offset": exc.offset},
    )


@app.exception_handler(ValueError)
async def _value_error(request: Request, exc: ValueError):
    return JSONResponse(
        status_code=400,
        content={"error": "invalid_input", "message": str(exc), "offset": None},
    )


@app.exception_handler(ObstructionMissingError)
@app.exception_handler(IdentityViolatedError)
@app.exception_handler(NonConvergenceError)
async def _contract_error(request: Request, exc: Exception):
    return JSONResponse(
        status_code=409,
        content={"error": "contract_violation", "message": str(exc), "offset": None},
    )


def _context_and_poly(vars_spec: str, poly_text: str) -> tuple[VarContext, NcPoly]:
    ctx = parse_var_context(vars_spec)
    return ctx, parse(poly_text, ctx)


def _decimal_str(x: float) -> str:
    # positional (never scientific) shortest round-trip decimal; grammar-safe
    return np.format_float_positional(x, unique=True, trim="-")


def _poly_decimal_str(p: NcPoly) -> str:
    """Canonical term order with decimal coefficients, for float certificates."""
    from ..freealg import word_key

    if p.is_zero():
        return "0"
    ctx = p.context
    pieces: list[str] = []
    for w in sorted(p.terms, key=word_key):
        c = float(p.terms[w])
        mag = _decimal_str(abs(c))
        if not len(w):
            body = mag
        elif mag == "1":
            body = word_str(ctx, w)
        else:
            body = f"{mag}*{word_str(ctx, w)}"
        if not pieces:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(f" + {body}" if c > 0 else f" - {body}")
    return "".join(pieces)


def _obstruction_fields(ctx: VarContext, obs: Obstruction) -> dict:
    return {
        "witness_word": word_str(ctx, obs.witness_word),
        "top_word": word_str(ctx, obs.top_word),
        "coefficient": rational_str(obs.coefficient),
        "kind": obs.kind.value,
    }


@app.get("/health", response_model=schemas.HealthResponse)
def health() -> schemas.HealthResponse:
    return schemas.HealthResponse(status="ok")


@app.post("/check-sos", response_model=schemas.SosResultResponse)
def check_sos(req: schemas.CheckSosRequest) -> schemas.SosResultResponse:
    ctx, poly = _context_and_poly(req.vars, req.poly)
    result = sos_decompose(
        poly,
        req.degree,
        accept_tol=req.accept_tol,
        converge_tol=req.converge_tol,
        max_iters=req.max_iters,
    )
    if isinstance(result, Certificate):
        return schemas.SosResultResponse(
            status="certificate",
            gs=[_poly_decimal_str(g) for g in result.gs],
            residual=result.residual,
            iterations=result.iterations,
        )
    if isinstance(result, NotSos):
        return schemas.SosResultResponse(
            status="not_sos", **_obstruction_fields(ctx, result.obstruction)
        )
    return schemas.SosResultResponse(
        status="inconclusive",
        iterations=result.iterations,
        min_eigenvalue=result.min_eigenvalue,
        residual=result.final_gap,
    )


@app.post("/refute-conjugation", response_model=schemas.RefuteResponse)
def refute_conjugation_endpoint(req: schemas.RefuteRequest) -> schemas.RefuteResponse:
    ctx, poly = _context_and_poly(req.vars, req.poly)
    tuples: list[tuple[NcPoly, ...]]
    if req.gs:
        tuples = [tuple(parse(text, ctx) for text in req.gs)]
    elif req.random:
        tuples = [
            random_conjugators(
                ctx,
                random.Random(f"{req.seed}:refute:{i}"),
                max_polys=req.random.max_polys,
                max_degree=req.random.max_degree,
            )
            for i in range(req.random.count)
        ]
    else:
        raise ValueError("provide either gs or random")
    records: list[schemas.RefutationRecord] = []
    for gs in tuples:
        echoed = [print_canonical(g) for g in gs]
        try:
            obs = refute_conjugation(poly, gs)
            records.append(
                schemas.RefutationRecord(
                    gs=echoed, refuted=True, **_obstruction_fields(ctx, obs)
                )
            )
        except ObstructionMissingError as exc:
            records.append(
                schemas.RefutationRecord(gs=echoed, refuted=False, error=str(exc))
            )
    refuted = sum(r.refuted for r in records)
    return schemas.RefuteResponse(
        records=records,
        total=len(records),
        refuted=refuted,
        all_refuted=refuted == len(records),
        summary=f"{refuted}/{len(records)} refuted",
    )


@app.post("/eval", response_model=schemas.MatrixResponse)
def eval_poly(req: schemas.EvalRequest) -> schemas.MatrixResponse:
    ctx, poly = _context_and_poly(req.vars, req.poly)
    t = MatTuple.from_matrices(ctx, req.matrices)
    result = evaluate(poly, t)
    return schemas.MatrixResponse(n=t.n, entries=[float(x) for x in result.ravel()])


@app.post("/gram", response_model=schemas.GramResponse)
def gram_endpoint(req: schemas.GramRequest) -> schemas.GramResponse:
    ctx, poly = _context_and_poly(req.vars, req.poly)
    m = canonical_gram(poly, req.degree)
    return schemas.GramResponse(
        basis=[word_str(ctx, w) for w in m.basis.words],
        entries=[float(x) for row in m.entries for x in row],
    )


@app.post("/shift-demo", response_model=schemas.ShiftDemoResponse)
def shift_demo(req: schemas.ShiftDemoRequest) -> schemas.ShiftDemoResponse:
    t = shift_truncation(req.size)
    basis_forms = []
    all_nonpositive = True
    for k in range(1, req.size):
        v = [Fraction(0)] * req.size
        v[k - 1] = Fraction(1)
        value = shift_quadratic_form(t, v)
        all_nonpositive = all_nonpositive and value <= 0
        basis_forms.append(schemas.ShiftBasisForm(k=k, value=rational_str(value)))
    vector_forms = []
    for raw in req.vectors or []:
        v = [Fraction(x) for x in raw]
        value = shift_quadratic_form(t, v)
        all_nonpositive = all_nonpositive and value <= 0
        vector_forms.append(
            schemas.ShiftVectorForm(
                vector=[rational_str(x) for x in v],
                value=rational_str(value),
                closed_form=rational_str(shift_closed_form(v)),
            )
        )
    return schemas.ShiftDemoResponse(
        size=req.size,
        subdiagonal=[int(t.matrix[k, k - 1]) for k in range(1, req.size)],
        basis_forms=basis_forms,
        vector_forms=vector_forms,
        all_nonpositive=all_nonpositive,
    )


@app.post("/paper-demo", response_model=schemas.PaperDemoResponse)
def paper_demo(req: schemas.PaperDemoRequest) -> schemas.PaperDemoResponse:
    report = run_paper_demo(dims=req.dims, samples=req.samples, seed=req.seed)
    return schemas.PaperDemoResponse(
        stages=[
            schemas.StageModel(
                name=s.name, passed=s.passed, lines=list(s.lines), data=s.data
            )
            for s in report.stages
        ],
        all_passed=report.passed,
        failed_stages=report.failed_stages(),
        transcript=report.transcript(),
    )
