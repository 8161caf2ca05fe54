"""FastAPI service wrapping the exact computer-algebra core.

Every computation is pure and deterministic given the request payload, so
the endpoints are safe to call concurrently and to cache.  Domain errors
(bad signatures, unknown coefficients, unsupported modes) come back as 400;
an exhausted time budget comes back as 408; a mathematical "no" (e.g. a
polynomial that is not a comitant) is a regular 200 with the verdict in the
body.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException, Request
from fastapi.responses import JSONResponse

from .. import hilbert as hb
from ..budget import BudgetExceeded, budget
from ..focal import (
    FocalEngineError,
    StructureReport,
    focal_quantities,
    pseudo_quantities,
)
from ..lie import is_comitant
from ..systems import Signature, SystemError, parse_system, restrict_to_variety, slot_count
from ..verify import run_paper_suite
from . import schemas as sc

app = FastAPI(
    title="centerfocus",
    description="Exact focal quantities, comitants and Hilbert-series "
    "calculations for planar polynomial differential systems.",
    version="0.1.0",
)


@app.exception_handler(SystemError)
async def system_error_handler(request: Request, exc: SystemError):
    return JSONResponse(status_code=400, content={"detail": str(exc)})


@app.exception_handler(BudgetExceeded)
async def budget_handler(request: Request, exc: BudgetExceeded):
    return JSONResponse(status_code=408, content={"detail": str(exc)})


@app.exception_handler(FocalEngineError)
async def engine_handler(request: Request, exc: FocalEngineError):
    return JSONResponse(status_code=500, content={"detail": str(exc)})


@app.get("/health")
def health():
    return {"status": "ok"}


@app.post("/focal", response_model=sc.FocalResponse)
def focal(req: sc.FocalRequest):
    spec = parse_system(req.system)
    if not spec.on_variety:
        spec = restrict_to_variety(spec)
    with budget(req.budget_seconds):
        seq = focal_quantities(spec, req.order, convention=req.convention)
    return sc.FocalResponse(
        signature=spec.signature.label,
        convention=seq.convention,
        quantities=[sc.QuantityEntry(k=i + 1, L=str(p)) for i, p in enumerate(seq.L)],
    )


@app.post("/pseudo", response_model=sc.PseudoResponse)
def pseudo(req: sc.PseudoRequest):
    spec = parse_system(req.system)
    free = tuple(req.free) if req.free else None
    point = None
    if req.point is not None:
        point = {name: value for name, value in req.point.items()}
    with budget(req.budget_seconds):
        result = pseudo_quantities(
            spec, req.k, mode=req.mode, free=free, point=point, heavy=req.heavy
        )
    if result and isinstance(result[0], StructureReport):
        return sc.PseudoResponse(
            signature=spec.signature.label,
            mode=req.mode,
            reports=[
                sc.StructureModel(k=r.k, m=r.m, n=r.n, N=r.N, types=[list(t) for t in r.types])
                for r in result
            ],
        )
    solutions = []
    for sol in result:
        value = None
        if sol.numerator_core.total_degree() == 0 and sol.sigma.total_degree() == 0:
            value = str(sol.value_at_zero_free())
        solutions.append(
            sc.PseudoSolutionModel(
                k=sol.k,
                m=sol.m,
                n=sol.n,
                numerator=str(sol.numerator_core),
                sigma=str(sol.sigma),
                free_terms={nm: str(p) for nm, p in sol.free_terms.items()},
                chosen_free=list(sol.chosen_free),
                value_at_zero_free=value,
            )
        )
    return sc.PseudoResponse(signature=spec.signature.label, mode=req.mode, solutions=solutions)


@app.post("/comitant-check", response_model=sc.ComitantCheckResponse)
def comitant_check(req: sc.ComitantCheckRequest):
    spec = parse_system(req.system)
    if not spec.is_symbolic:
        raise SystemError("comitant checking uses the fully symbolic system")
    try:
        poly = spec.ring.parse(req.polynomial)
    except ValueError as exc:
        raise SystemError("bad polynomial: %s" % exc) from None
    with budget(req.budget_seconds):
        try:
            verdict = is_comitant(poly, spec)
        except ValueError:
            groups = [list(spec.phase_indices)] + spec.coefficient_groups()
            witness = poly.multidegree(groups)
            return sc.ComitantCheckResponse(
                homogeneous=False,
                comitant=False,
                reason="not homogeneous per variable block (witness monomials %r)"
                % (witness.witness,),
            )
    return sc.ComitantCheckResponse(
        homogeneous=True,
        comitant=verdict.ok,
        type=list(verdict.ctype.as_tuple()),
        weight=verdict.weight,
        reason=verdict.reason,
        witness_operator=verdict.witness_operator,
        residual=str(verdict.residual) if verdict.residual is not None else None,
    )


@app.post("/hilbert", response_model=sc.HilbertResponse)
def hilbert_endpoint(req: sc.HilbertRequest):
    try:
        if isinstance(req.series, str):
            name = req.series
            if name.startswith("builtin:"):
                name = name.split(":", 1)[1]
            series = hb.builtin_series(name)
        else:
            series = hb.series_from_json(req.series)
    except ValueError as exc:
        raise SystemError(str(exc)) from None
    out = series.describe()
    krull = None
    coefficients = None
    try:
        if req.krull:
            krull = hb.krull_dimension(series)
        if req.expand is not None:
            coefficients = hb.expand(series, req.expand)
    except ValueError as exc:
        raise SystemError(str(exc)) from None
    return sc.HilbertResponse(
        variables=out["variables"],
        numerator=out["numerator"],
        denominator=out["denominator"],
        krull=krull,
        coefficients=coefficients,
    )


@app.post("/rho", response_model=sc.RhoResponse)
def rho(req: sc.RhoRequest):
    if isinstance(req.signature, str):
        signature = Signature.parse(req.signature)
    else:
        signature = Signature(tuple(int(v) for v in req.signature))
    return sc.RhoResponse(
        signature=signature.label,
        rho=hb.rho_bound(signature),
        slot_count=slot_count(signature),
    )


@app.post("/verify", response_model=sc.VerifyResponse)
def verify(req: sc.VerifyRequest):
    with budget(req.budget_seconds):
        report = run_paper_suite(seed=req.seed)
    return sc.VerifyResponse(**report)
