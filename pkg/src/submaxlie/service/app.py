"""FastAPI service wrapping the core package.

Every computation lives behind a POST endpoint taking a pydantic request
model and returning a deterministic JSON report carrying the schema tag
"submax-lie/1".  Domain errors map to 400 with kind "usage"; search budget
refusals map to 429 with kind "refused".
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..checks import run_checks
from ..commuting import enumerate_commuting, max_table, p_rank
from ..errors import BudgetExceeded, UsageError
from ..nilradical import FieldSpec, smallest_standard_prime
from ..ordering import parse_order
from ..serialize import (
    SCHEMA,
    parse_lt_spec,
    rootset_json,
    subspace_json,
)
from ..solver import (
    FiberProblem,
    classify_fiber,
    dichotomy_check,
    lt_fiber,
    predicted_family,
    sampled_lt_lemma_check,
)
from .schemas import (
    ConjugacyRequest,
    EnumerateRequest,
    FiberRequest,
    RankRequest,
    RankResponse,
    SampleRequest,
    TablesRequest,
    VerifyRequest,
)


def create_app() -> FastAPI:
    app = FastAPI(
        title="submaxlie",
        version=__version__,
        description="Commuting root sets and elementary subalgebras of the "
                    "type-A nilradical, verified at desk scale.",
    )

    @app.exception_handler(UsageError)
    async def usage_handler(request: Request, exc: UsageError):
        return JSONResponse(
            status_code=400,
            content={"error": {"kind": "usage", "message": str(exc)}},
        )

    @app.exception_handler(ValueError)
    async def value_handler(request: Request, exc: ValueError):
        return JSONResponse(
            status_code=400,
            content={"error": {"kind": "usage", "message": str(exc)}},
        )

    @app.exception_handler(BudgetExceeded)
    async def budget_handler(request: Request, exc: BudgetExceeded):
        return JSONResponse(
            status_code=429,
            content={"error": {"kind": "refused", "message": str(exc)}},
        )

    @app.get("/healthz")
    def healthz() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/rank", response_model=RankResponse,
              response_model_by_alias=True)
    def rank(req: RankRequest) -> RankResponse:
        rk = p_rank(req.n)
        return RankResponse(n=req.n, p_rank=rk, submax_rank=rk - 1)

    @app.post("/tables")
    def tables(req: TablesRequest) -> dict:
        report = max_table(req.n, req.level, budget=req.budget,
                           compute=req.compute)
        report["schema"] = SCHEMA
        report["predicted"] = [
            {"name": entry["name"], "roots": rootset_json(entry["roots"])}
            for entry in report["predicted"]
        ]
        if report["computed"] is not None:
            report["computed"] = [rootset_json(rs)
                                  for rs in report["computed"]]
        return report

    @app.post("/enumerate")
    def enumerate_(req: EnumerateRequest) -> dict:
        sets = enumerate_commuting(req.n, req.r,
                                   maximal_only=req.maximal_only,
                                   budget=req.budget)
        return {
            "schema": SCHEMA,
            "n": req.n,
            "r": req.r,
            "maximal_only": req.maximal_only,
            "count": len(sets),
            "sets": [rootset_json(rs) for rs in sets],
        }

    @app.post("/fiber")
    def fiber(req: FiberRequest) -> dict:
        p = req.p if req.p is not None else smallest_standard_prime(req.n)
        field = FieldSpec(p, req.n, allow_nonstandard=req.allow_nonstandard)
        order = parse_order(req.order, req.n)
        pivots = parse_lt_spec(req.lt, req.n)
        problem = FiberProblem(field=field, order=order, pivots=pivots,
                               strategy=req.strategy)
        sols = lt_fiber(problem, budget=req.budget)
        matches = None
        family = None
        if isinstance(req.lt, str) and not req.lt.startswith("["):
            spec = predicted_family(req.lt, req.n)
            family = {
                "base": rootset_json(spec.base),
                "conjugation_root": (None if spec.conj_root is None else
                                     f"{spec.conj_root[0]}-{spec.conj_root[1]}"),
            }
            if sols.complete:
                matches = classify_fiber(sols, spec)["match"]
        return {
            "schema": SCHEMA,
            "problem": {
                "n": req.n,
                "p": p,
                "order": order.label(),
                "lt": rootset_json(pivots),
                "strategy": req.strategy,
            },
            "solutions": [subspace_json(e) for e in sols.solutions],
            "count": len(sols.solutions),
            "complete": sols.complete,
            "nodes": sols.nodes,
            "propagations": sols.propagations,
            "matches_family": matches,
            "family": family,
            "replay": sols.replay_log,
        }

    @app.post("/conjugacy")
    def conjugacy(req: ConjugacyRequest) -> dict:
        from ..actions import weyl_conjugacy_search
        from ..roots import weyl_image_exact

        R1 = parse_lt_spec(req.r1, req.n)
        R2 = parse_lt_spec(req.r2, req.n)
        w = weyl_conjugacy_search(req.n, R1, R2, exhaustive=req.exhaustive)
        verified = (w is not None and
                    weyl_image_exact(w, R1) == frozenset(R2))
        return {
            "schema": SCHEMA,
            "n": req.n,
            "r1": rootset_json(R1),
            "r2": rootset_json(R2),
            "exhaustive": req.exhaustive,
            "witness": list(w) if w is not None else None,
            "verified": verified if w is not None else None,
        }

    @app.post("/sample")
    def sample(req: SampleRequest) -> dict:
        p = req.p if req.p is not None else smallest_standard_prime(req.n)
        if req.kind == "lt-lemma":
            report = sampled_lt_lemma_check(req.n, p, req.samples, req.seed)
        elif req.kind == "dichotomy":
            report = dichotomy_check(req.n, p, req.samples, req.seed)
        else:
            raise UsageError(f"unknown sample kind {req.kind!r}")
        report["schema"] = SCHEMA
        return report

    @app.post("/verify")
    def verify(req: VerifyRequest) -> dict:
        report = run_checks(req.suite, n_max=req.n_max)
        report["schema"] = SCHEMA
        return report

    return app


app = create_app()
